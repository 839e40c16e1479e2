// Minimal polynomial vectors of index ranges, built bottom-up, and the
// property that reducing by them does not change the functionals.
//
// cargo run --example min_poly_tree

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skew_knh::instance::Instance;
use skew_knh::module::vec_mod_r;
use skew_knh::{EvalFamily, FieldCtx, MinPolyTree, Result, SkewPoly, SkewRing, SkewVec, TreeMethod, WeightVec};

pub fn run() -> Result<()> {
    let f = FieldCtx::new(5, 3, None)?;
    let ring = SkewRing::new(f.clone());
    for family in [EvalFamily::Operator, EvalFamily::Remainder] {
        let inst = Instance::random(ring.clone(), family, 1, 10, WeightVec::zeros(2), 7)?;
        let tree = MinPolyTree::build(&inst.fs, TreeMethod::Subproduct)?;
        let slow = MinPolyTree::build(&inst.fs, TreeMethod::Euclid)?;
        println!("{family:?}: {} nodes", tree.len());
        for (&(i, j), v) in tree.iter() {
            assert_eq!(v, slow.get(i, j)?);
            if j - i >= 4 {
                let degs: Vec<_> = v.entries().iter().map(|p| p.degree().unwrap_or(0)).collect();
                println!("  [{i},{j}] degrees {degs:?}");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = SkewVec(
            (0..2)
                .map(|_| SkewPoly::from_coeffs((0..30).map(|_| f.random(&mut rng)).collect()))
                .collect(),
        );
        let (i, j) = (5, 9);
        let r = vec_mod_r(&ring, &q, tree.get(i, j)?)?;
        for l in i..=j {
            assert_eq!(inst.fs.eval(l, &q)?, inst.fs.eval(l, &r)?);
        }
        println!("  degree-29 vector reduced mod [{i},{j}] keeps E_{i}..E_{j}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
