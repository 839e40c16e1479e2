//! Dense polynomials over a prime field F_p, used to build and validate the
//! extension field modulus and to invert field elements.
//!
//! Coefficients are ascending and kept trimmed (no trailing zeros); the zero
//! polynomial is the empty vector.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Inverse of `a` modulo `h`, or `None` when they are not coprime.
pub(crate) fn inv_mod_poly(a: &[u64], h: &[u64], p: u64) -> Option<Poly> {
    let (mut r0, mut r1) = (trim(h.to_vec()), rem(a, h, p));
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(trim(t0.iter().map(|&x| x * c % p).collect()))
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], h: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), h, p)
}

/// `base^(p^k)` modulo `h`.
pub(crate) fn frobenius_pow(base: &[u64], k: usize, h: &[u64], p: u64) -> Poly {
    let mut acc = rem(base, h, p);
    for _ in 0..k {
        acc = powmod(&acc, p, h, p);
    }
    acc
}

pub(crate) fn powmod(base: &[u64], mut e: u64, h: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[1], h, p);
    let mut b = rem(base, h, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, h, p);
        }
        b = mulmod(&b, &b, h, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility of a monic `h` of degree `m >= 1`.
///
/// Small fields (p^m <= 2^20) use trial division by every monic polynomial of
/// degree at most m/2; larger ones use Rabin's test.
pub(crate) fn is_irreducible(h: &[u64], p: u64) -> bool {
    let m = h.len() - 1;
    if m == 1 {
        return true;
    }
    let small = (m as f64) * (p as f64).log2() <= 20.0;
    if small {
        is_irreducible_trial(h, p)
    } else {
        is_irreducible_rabin(h, p)
    }
}

pub(crate) fn is_irreducible_trial(h: &[u64], p: u64) -> bool {
    let m = h.len() - 1;
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut f = digits(idx, p, d);
            f.push(1);
            if rem(h, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

pub(crate) fn is_irreducible_rabin(h: &[u64], p: u64) -> bool {
    let m = h.len() - 1;
    let x = vec![0, 1];
    if sub(&frobenius_pow(&x, m, h, p), &rem(&x, h, p), p) != Vec::<u64>::new() {
        return false;
    }
    for l in prime_divisors(m) {
        let t = sub(&frobenius_pow(&x, m / l, h, p), &rem(&x, h, p), p);
        if gcd(&t, h, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The `len` base-`p` digits of `idx`, least significant first.
pub(crate) fn digits(mut idx: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(idx % p);
        idx /= p;
    }
    out
}
