// Writing an instance to JSON, reading it back, solving, and serializing
// the basis in the same format the command-line tool uses.
//
// cargo run --example instance_json

use skew_knh::instance::{mat_from_json, BasisFile, Instance, InstanceFile};
use skew_knh::{solve, Algorithm, EvalFamily, FieldCtx, Result, SkewRing, SolveOptions, WeightVec};

pub fn run() -> Result<()> {
    let ring = SkewRing::new(FieldCtx::new(2, 2, None)?);
    let inst = Instance::random(ring, EvalFamily::Operator, 1, 3, WeightVec(vec![0, 1]), 9)?;
    let text = inst.to_file().to_json();
    print!("{text}");
    let back = InstanceFile::parse(&text)?.to_instance()?;
    let sol = solve(&back.fs, &back.weights, Algorithm::Fast, &SolveOptions::default())?;
    let field = back.fs.ring().field();
    let out = BasisFile::from_solution(field, &sol, false);
    let json = out.to_json();
    print!("{json}");
    let parsed: BasisFile = serde_json::from_str(&json)?;
    assert_eq!(mat_from_json(field, &parsed.rows)?, sol.basis);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
