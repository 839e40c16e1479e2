// Weighted degrees, pivots, the weak Popov check and reduction of kernel
// vectors against an interpolation basis.
//
// cargo run --example weak_popov

use skew_knh::instance::Instance;
use skew_knh::knh_fast::{reduce_against, verify};
use skew_knh::module::{is_wowpb, vec_add, vec_mat_mul, wdeg_pivot};
use skew_knh::{solve, Algorithm, EvalFamily, FieldCtx, Result, SkewPoly, SkewRing, SkewVec, SolveOptions, WeightVec};

pub fn run() -> Result<()> {
    let f = FieldCtx::new(3, 2, None)?;
    let ring = SkewRing::new(f.clone().with_derivation(f.gen()));
    let w = WeightVec(vec![2, 0, 1]);
    let inst = Instance::random(ring.clone(), EvalFamily::Remainder, 2, 9, w.clone(), 5)?;
    let sol = solve(&inst.fs, &w, Algorithm::Fast, &SolveOptions::default())?;
    verify(&inst.fs, &w, &sol)?;
    println!("weak Popov: {}", is_wowpb(&sol.basis, &w));
    for row in sol.basis.rows() {
        let (d, piv) = wdeg_pivot(row, &w)?.expect("nonzero row");
        println!("  w-degree {d}, pivot {piv}");
    }
    // any left combination of rows is a kernel vector and reduces to zero
    let coeffs = SkewVec(vec![
        SkewPoly::from_coeffs(vec![f.gen(), f.one()]),
        SkewPoly::constant(f.from_int(2)),
        SkewPoly::x(),
    ]);
    let v = vec_mat_mul(&ring, &coeffs, &sol.basis)?;
    for i in 0..inst.fs.len() {
        assert!(inst.fs.eval(i, &v)?.is_zero());
    }
    assert!(reduce_against(&ring, &sol.basis, &w, &v)?.is_zero());
    // a vector outside the kernel leaves a nonzero remainder
    let bad = vec_add(&ring, &v, &SkewVec::unit(3, 1));
    println!("kernel combination reduces to 0; perturbed vector reduces to nonzero: {}", !reduce_against(&ring, &sol.basis, &w, &bad)?.is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
