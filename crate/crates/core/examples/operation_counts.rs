// Field multiplication counts of both solvers as n doubles.
//
// cargo run --release --example operation_counts

use skew_knh::bench::{run as bench, BenchConfig};
use skew_knh::{Algorithm, Result};

pub fn run() -> Result<()> {
    let cfg = BenchConfig {
        grid: "s=2;n=32,64,128;p=65521;m=2;family=operator".parse()?,
        seeds: vec![0],
        karatsuba: Some(2),
        ..BenchConfig::default()
    };
    let recs = bench(&cfg)?;
    for alg in [Algorithm::Baseline, Algorithm::Fast] {
        let counts: Vec<u64> = recs.iter().filter(|r| r.algorithm == alg).map(|r| r.mult_count).collect();
        let ratios: Vec<String> = counts.windows(2).map(|w| format!("{:.2}", w[1] as f64 / w[0] as f64)).collect();
        println!("{alg:>8}: mults {counts:?}, growth per doubling {ratios:?}");
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
