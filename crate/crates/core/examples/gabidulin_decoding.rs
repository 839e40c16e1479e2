// An [8,4] Gabidulin code over F_{2^8}: encode, add rank errors, decode.
//
// cargo run --example gabidulin_decoding

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skew_knh::rank_codes::{random_rank_error, rank_over_base, DecodeOutcome, GabidulinCode};
use skew_knh::{Algorithm, Fe, FieldCtx, Result, SkewRing};

pub fn run() -> Result<()> {
    let field = FieldCtx::new(2, 8, None)?;
    let code = GabidulinCode::standard(SkewRing::new(field.clone()), 8, 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    println!("[8,4] code, decoding radius {}", code.radius());
    for t in 0..=4 {
        let mut ok = 0;
        let mut failures = 0;
        let mut other = 0;
        for _ in 0..50 {
            let f = code.random_message(&mut rng);
            let e = random_rank_error(&field, 8, t, &mut rng)?;
            assert_eq!(rank_over_base(&field, &e), t);
            let r: Vec<Fe> = code.encode(&f)?.iter().zip(&e).map(|(&c, &x)| field.add(c, x)).collect();
            match code.decode(&r, Algorithm::Fast)? {
                DecodeOutcome::Decoded(g) if g == f => ok += 1,
                // another codeword within the radius of r: nearest-codeword decoding
                DecodeOutcome::Decoded(_) => other += 1,
                DecodeOutcome::Failure => failures += 1,
            }
        }
        println!("  error rank {t}: {ok}/50 recovered, {failures} failures, {other} decoded to another codeword");
        if t <= code.radius() {
            assert_eq!(ok, 50);
        }
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
