// Divide-and-conquer interpolation against the iterative algorithm on a
// random instance: identical bases, different operation counts.
//
// cargo run --release --example fast_interpolation

use skew_knh::instance::Instance;
use skew_knh::{solve, Algorithm, EvalFamily, FieldCtx, Result, SkewRing, SolveOptions, WeightVec};

pub fn run() -> Result<()> {
    let field = FieldCtx::new(65521, 2, None)?;
    let ring = SkewRing::new(field).with_karatsuba(Some(2));
    let inst = Instance::random(ring, EvalFamily::Operator, 2, 192, WeightVec(vec![0, 10, 20]), 42)?;
    let opts = SolveOptions { verify: true, ..SolveOptions::default() };
    let base = solve(&inst.fs, &inst.weights, Algorithm::Baseline, &opts)?;
    let fast = solve(&inst.fs, &inst.weights, Algorithm::Fast, &opts)?;
    assert_eq!(base.basis, fast.basis);
    assert_eq!(base.degrees, fast.degrees);
    println!("n = 192, s = 2, weights {:?}", inst.weights.0);
    println!("row degrees {:?}", fast.degrees);
    for (name, sol) in [("baseline", &base), ("fast", &fast)] {
        println!(
            "{name:>8}: {:>9} mults {:>9} adds, {} updates",
            sol.stats.ops.mul, sol.stats.ops.add, sol.stats.updates
        );
    }
    println!("tree nodes used by the fast solver: {}", fast.stats.tree_nodes);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
