// The twisted product x·a = σ(a)x + δ(a), Karatsuba against schoolbook,
// and right/left division.
//
// cargo run --example skew_multiplication

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skew_knh::counter::measure;
use skew_knh::{FieldCtx, Result, SkewPoly, SkewRing};

pub fn run() -> Result<()> {
    let f4 = FieldCtx::new(2, 2, Some(&[1, 1, 1]))?;
    let a = f4.gen();
    let ring = SkewRing::new(f4.clone());
    let xa = ring.mul(&SkewPoly::x(), &SkewPoly::constant(a));
    println!("delta = 0:  x*a = {}", ring.format(&xa));
    let dring = SkewRing::new(f4.with_derivation(a));
    let xa = dring.mul(&SkewPoly::x(), &SkewPoly::constant(a));
    println!("delta = a(sigma - id):  x*a = {}", dring.format(&xa));

    let f = FieldCtx::new(65521, 2, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rand_poly = |n: usize, rng: &mut ChaCha8Rng| SkewPoly::from_coeffs((0..n).map(|_| f.random(rng)).collect());
    let (g, h) = (rand_poly(256, &mut rng), rand_poly(256, &mut rng));
    let school = SkewRing::new(f.clone()).with_karatsuba(None);
    let kara = SkewRing::new(f.clone()).with_karatsuba(Some(2));
    let (p1, c1) = measure(|| school.mul(&g, &h));
    let (p2, c2) = measure(|| kara.mul(&g, &h));
    assert_eq!(p1, p2);
    println!("degree 255 x 255 product: schoolbook {} mults, Karatsuba {} mults", c1.mul, c2.mul);

    let big = kara.mul(&g, &h);
    let (q, r) = kara.right_divmod(&big, &h)?;
    assert_eq!(q, g);
    assert!(r.is_zero());
    let (lq, lr) = kara.left_divmod(&big, &g)?;
    assert_eq!(lq, h);
    assert!(lr.is_zero());
    println!("right and left quotients recovered exactly");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
