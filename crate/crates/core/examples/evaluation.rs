// Generalized operator evaluation, remainder evaluation, conjugacy and
// minimal polynomials of point sets.
//
// cargo run --example evaluation

use skew_knh::{EvalFamily, FieldCtx, Result, SkewPoly, SkewRing};

pub fn run() -> Result<()> {
    let f8 = FieldCtx::new(2, 3, None)?;
    let ring = SkewRing::new(f8.clone());
    let a = f8.gen();
    let f = SkewPoly::from_coeffs(vec![a, f8.one(), f8.one()]);
    println!("f = {}", ring.format(&f));
    for c in [f8.one(), a] {
        // with b = 1 this is linearized evaluation a*c + c^2 + c^4
        println!("  f(c)_1 for c = {}: {}", f8.format(c), f8.format(ring.op_eval(&f, c, f8.one())));
    }
    let b = f8.add(a, f8.one());
    let (_, r) = ring.right_divmod(&f, &SkewPoly::linear(&f8, b))?;
    println!("  remainder evaluation at {}: {} (remainder of division by x - b: {})", f8.format(b), f8.format(ring.rem_eval(&f, b)), ring.format(&r));

    // the annihilator of a set of points has degree equal to their rank
    let pts: Vec<_> = f8.elements().skip(1).take(4).collect();
    let params = vec![f8.one(); pts.len()];
    let m = ring.min_poly_set(EvalFamily::Operator, &pts, &params)?;
    println!("minimal polynomial of {} points (rank 3 over F_2): {}", pts.len(), ring.format(&m));
    for &c in &pts {
        assert!(ring.op_eval(&m, c, f8.one()).is_zero());
    }
    println!("conjugate of {} by {}: {}", f8.format(b), f8.format(a), f8.format(ring.conjugate(b, a)?));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
