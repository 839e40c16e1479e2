// Greatest common right divisor and least common left multiple by the
// extended Euclidean algorithm.
//
// cargo run --example lclm

use skew_knh::{FieldCtx, Result, SkewPoly, SkewRing};

pub fn run() -> Result<()> {
    let f4 = FieldCtx::new(2, 2, Some(&[1, 1, 1]))?;
    let a = f4.gen();
    let a2 = f4.mul(a, a);
    let ring = SkewRing::new(f4.clone());
    let f = SkewPoly::from_coeffs(vec![a, f4.one()]);
    let g = SkewPoly::from_coeffs(vec![a2, f4.one()]);
    let (d, l) = ring.gcrd_lclm(&f, &g)?;
    println!("f = {}, g = {}", ring.format(&f), ring.format(&g));
    println!("gcrd = {}, lclm = {}", ring.format(&d), ring.format(&l));
    assert_eq!(l, SkewPoly::from_coeffs(vec![f4.one(), f4.zero(), f4.one()]));
    // right divisibility by both operands
    assert!(ring.right_rem(&l, &f)?.is_zero() && ring.right_rem(&l, &g)?.is_zero());

    // with a common right factor the lclm degree drops
    let h = SkewPoly::from_coeffs(vec![f4.one(), a]);
    let (fh, gh) = (ring.mul(&h, &f), ring.mul(&f, &f));
    let (d, l) = ring.gcrd_lclm(&fh, &gh)?;
    println!("gcrd(h*f, f*f) = {}, lclm degree {}", ring.format(&d), l.degree().unwrap_or(0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
