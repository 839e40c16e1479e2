// Arithmetic in F_4 and F_{3^3}: products, inverses, the Frobenius
// automorphism and an inner derivation.
//
// cargo run --example field_arithmetic

use skew_knh::{FieldCtx, Result};

pub fn run() -> Result<()> {
    let f4 = FieldCtx::new(2, 2, Some(&[1, 1, 1]))?;
    let a = f4.gen();
    println!("F_4 = F_2[a]/(a^2+a+1), elements:");
    for x in f4.elements() {
        let inv = if x.is_zero() { "-".to_string() } else { f4.format(f4.inv(x)?) };
        println!("  {:>4}  square {:>4}  inverse {:>4}  sigma {:>4}", f4.format(x), f4.format(f4.mul(x, x)), inv, f4.format(f4.sigma(x)));
    }
    assert_eq!(f4.mul(a, a), f4.add(a, f4.one()));

    // default modulus: smallest monic irreducible of degree 3 over F_3
    let f27 = FieldCtx::new(3, 3, None)?;
    println!("F_27 modulus (ascending): {:?}", f27.modulus());
    let g = f27.gen();
    let d = f27.clone().with_derivation(g);
    let b = f27.from_digits(&[1, 2])?;
    println!("delta(b) with gamma = a: {}", d.format(d.delta(b)));
    // σ has order m on F_{p^m}
    let mut c = b;
    for _ in 0..f27.m() {
        c = f27.sigma(c);
    }
    assert_eq!(c, b);
    println!("sigma^3(b) = b = {}", f27.format(c));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
