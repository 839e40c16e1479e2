// The iterative interpolation algorithm on a one-functional instance over
// F_4, printing each step.
//
// cargo run --example knh_baseline

use skew_knh::knh::knh_interpolate_traced;
use skew_knh::{EvalFamily, Fe, FieldCtx, FunctionalPoint, FunctionalSet, Result, SkewRing, WeightVec};

pub fn run() -> Result<()> {
    let f4 = FieldCtx::new(2, 2, Some(&[1, 1, 1]))?;
    let a = f4.gen();
    let ring = SkewRing::new(f4.clone());
    // E(Q) = Q_0(1)_1 + Q_1(a)_1
    let fs = FunctionalSet::new(
        ring.clone(),
        EvalFamily::Operator,
        2,
        vec![FunctionalPoint { b: Fe::ONE, u: vec![Fe::ONE, a] }],
    )?;
    let out = knh_interpolate_traced(&fs, &WeightVec(vec![0, 0]))?;
    for s in &out.steps {
        let deltas: Vec<_> = s.deltas.iter().map(|&d| f4.format(d)).collect();
        println!("functional {}: discrepancies {deltas:?}, pivot row {:?}", s.index, s.pivot);
    }
    for (row, d) in out.basis.rows().iter().zip(&out.degrees) {
        let entries: Vec<_> = row.entries().iter().map(|p| ring.format(p)).collect();
        println!("  [{}]  degree {d}", entries.join(", "));
    }
    assert_eq!(out.degrees, vec![1, 0]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
