//! Finite extension fields F_{p^m} = F_p[z]/(h(z)) together with the
//! automorphism `σ(a) = a^(p^r)` and the inner σ-derivation
//! `δ(a) = γ·(σ(a) − a)`.
//!
//! The field of the skew polynomial ring's "base" is the fixed field of σ,
//! which is F_{p^gcd(r, m)}; for `r = 1` that is F_p itself.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::counter;
use crate::error::{Error, Result};
use crate::fp_poly;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Largest supported characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// An element of F_{p^m}: base-p coefficients of a polynomial in `z` of
/// degree below `m`, ascending. Unused slots are zero.
///
/// Elements do not carry their field; mixing elements of different
/// [`FieldCtx`] values is a logic error.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe([u32; MAX_DEGREE]);

impl Fe {
    pub const ZERO: Fe = Fe([0; MAX_DEGREE]);
    pub const ONE: Fe = {
        let mut c = [0; MAX_DEGREE];
        c[0] = 1;
        Fe(c)
    };

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        *self == Fe::ONE
    }

    /// Coefficient of `z^i`.
    #[inline]
    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..len])
    }
}

/// Serialized form of a field context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: usize,
    /// Monic modulus, ascending, length `m + 1`. Omitted means the default
    /// (lexicographically smallest) irreducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    #[serde(default = "default_aut_power")]
    pub aut_power: usize,
    /// Derivation parameter as base-p digits; omitted means zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<u64>>,
}

fn default_aut_power() -> usize {
    1
}

/// Arithmetic context for F_{p^m} with automorphism and derivation.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    aut_power: usize,
    gamma: Fe,
    /// Order of σ as a map, `m / gcd(r, m)` (1 when r = 0).
    order: usize,
    /// `sigma_cols[k][j] = σ^k(z^j)` for `k < order`.
    sigma_cols: Vec<Vec<Fe>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("aut_power", &self.aut_power)
            .field("gamma", &self.gamma)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p
            && self.m == o.m
            && self.modulus == o.modulus
            && self.aut_power == o.aut_power
            && self.gamma == o.gamma
    }
}

impl Eq for FieldCtx {}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FieldCtx {
    /// Builds F_{p^m} with σ the p-power Frobenius (r = 1) and δ = 0.
    ///
    /// Without an explicit modulus the lexicographically smallest monic
    /// irreducible of degree `m` is used, comparing coefficient vectors from
    /// the highest degree down.
    pub fn new(p: u64, m: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if !fp_poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::CharacteristicTooLarge(p));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::ExtensionDegree(m));
        }
        let modulus = match modulus {
            Some(h) => {
                if h.len() != m + 1 || h[m] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial with {} coefficients, got {:?}",
                        m + 1,
                        h
                    )));
                }
                if h.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must be below {p}")));
                }
                if !fp_poly::is_irreducible(h, p) {
                    return Err(Error::Reducible(p));
                }
                h.to_vec()
            }
            None => default_modulus(p, m),
        };
        let mut ctx = FieldCtx {
            p: p as u32,
            m,
            modulus: modulus.iter().map(|&c| c as u32).collect(),
            aut_power: 0,
            gamma: Fe::ZERO,
            order: 1,
            sigma_cols: Vec::new(),
        };
        ctx.set_automorphism(if m > 1 { 1 } else { 0 })?;
        Ok(ctx)
    }

    /// Rebuilds the context from its serialized form.
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        let ctx = FieldCtx::new(spec.p, spec.m, spec.modulus.as_deref())?;
        let mut ctx = ctx.with_automorphism(spec.aut_power)?;
        if let Some(g) = &spec.gamma {
            let g = ctx.from_digits(g)?;
            ctx = ctx.with_derivation(g);
        }
        Ok(ctx)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p as u64,
            m: self.m,
            modulus: Some(self.modulus.iter().map(|&c| c as u64).collect()),
            aut_power: self.aut_power,
            gamma: Some(self.to_digits(self.gamma)),
        }
    }

    /// Sets σ = Frobenius^r, `0 <= r < m`.
    pub fn with_automorphism(mut self, r: usize) -> Result<Self> {
        self.set_automorphism(r)?;
        Ok(self)
    }

    /// Sets the inner derivation parameter γ; γ = 0 gives δ = 0.
    pub fn with_derivation(mut self, gamma: Fe) -> Self {
        self.gamma = gamma;
        self
    }

    fn set_automorphism(&mut self, r: usize) -> Result<()> {
        if r >= self.m.max(1) {
            return Err(Error::AutomorphismPower { r, m: self.m });
        }
        self.aut_power = r;
        self.order = if r == 0 { 1 } else { self.m / gcd(r, self.m) };
        let p = self.p as u64;
        let h: Vec<u64> = self.modulus.iter().map(|&c| c as u64).collect();
        let zp = fp_poly::frobenius_pow(&[0, 1], r, &h, p);
        let mut cols = Vec::with_capacity(self.order);
        // k = 0: identity
        let mut current: Vec<Vec<u64>> = (0..self.m).map(|j| fp_poly::rem(&unit(j), &h, p)).collect();
        for _ in 0..self.order {
            cols.push(current.iter().map(|c| self.fe_from_poly(c)).collect());
            // σ(σ^k(z^j)) = σ^k(z^j) evaluated at z^{p^r}
            current = current.iter().map(|c| compose(c, &zp, &h, p)).collect();
        }
        self.sigma_cols = cols;
        Ok(())
    }

    fn fe_from_poly(&self, c: &[u64]) -> Fe {
        let mut out = Fe::ZERO;
        for (i, &v) in c.iter().enumerate().take(self.m) {
            out.0[i] = v as u32;
        }
        out
    }

    fn fe_to_poly(&self, a: &Fe) -> Vec<u64> {
        fp_poly::trim(a.0[..self.m].iter().map(|&c| c as u64).collect())
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Field size p^m, saturating at `u64::MAX`.
    pub fn size(&self) -> u64 {
        (self.p as u64).saturating_pow(self.m as u32)
    }

    pub fn modulus(&self) -> Vec<u64> {
        self.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn aut_power(&self) -> usize {
        self.aut_power
    }

    pub fn gamma(&self) -> Fe {
        self.gamma
    }

    /// Order of σ; `σ^order = id`.
    pub fn sigma_order(&self) -> usize {
        self.order
    }

    /// Whether δ is a nonzero map.
    pub fn has_derivation(&self) -> bool {
        self.order > 1 && !self.gamma.is_zero()
    }

    /// Degree over F_p of the fixed field of σ.
    pub fn fixed_field_degree(&self) -> usize {
        if self.aut_power == 0 {
            self.m
        } else {
            gcd(self.aut_power, self.m)
        }
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The class of `z`, i.e. the generator α of the polynomial basis.
    pub fn gen(&self) -> Fe {
        self.fe_from_poly(&fp_poly::rem(&[0, 1], &self.modulus(), self.p as u64))
    }

    /// Image of an integer under Z → F_p ⊂ F_{p^m}.
    pub fn from_int(&self, v: i64) -> Fe {
        let p = self.p as i64;
        let mut out = Fe::ZERO;
        out.0[0] = v.rem_euclid(p) as u32;
        out
    }

    /// Element from ascending base-p digits; shorter inputs are zero-padded.
    pub fn from_digits(&self, digits: &[u64]) -> Result<Fe> {
        if digits.len() > self.m {
            return Err(Error::InvalidElement(format!(
                "{} digits for an extension of degree {}",
                digits.len(),
                self.m
            )));
        }
        let mut out = Fe::ZERO;
        for (i, &d) in digits.iter().enumerate() {
            if d >= self.p as u64 {
                return Err(Error::InvalidElement(format!("digit {d} not below p = {}", self.p)));
            }
            out.0[i] = d as u32;
        }
        Ok(out)
    }

    /// The `m` base-p digits of `a`, ascending.
    pub fn to_digits(&self, a: Fe) -> Vec<u64> {
        a.0[..self.m].iter().map(|&c| c as u64).collect()
    }

    /// Element whose digits are the base-p expansion of `idx` (for enumeration).
    pub fn from_index(&self, idx: u64) -> Fe {
        self.fe_from_poly(&fp_poly::digits(idx, self.p as u64, self.m))
    }

    /// `a` as a polynomial in the generator, written `a`: e.g. `a^2+2a+1`.
    pub fn format(&self, a: Fe) -> String {
        let terms: Vec<String> = (0..self.m)
            .rev()
            .filter(|&i| a.0[i] != 0)
            .map(|i| {
                let c = a.0[i];
                let mono = match i {
                    0 => String::new(),
                    1 => "a".to_string(),
                    _ => format!("a^{i}"),
                };
                match (c, i) {
                    (_, 0) => c.to_string(),
                    (1, _) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    pub fn to_index(&self, a: Fe) -> u64 {
        a.0[..self.m].iter().rev().fold(0, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All elements, in index order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let mut out = Fe::ZERO;
        for c in out.0[..self.m].iter_mut() {
            *c = rng.gen_range(0..self.p);
        }
        out
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    /// Uniform element of the fixed field of σ (the trace of a random element).
    pub fn random_fixed<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let a = self.random(rng);
        (0..self.order).fold(Fe::ZERO, |acc, k| self.raw_add(&acc, &self.raw_sigma_pow(&a, k)))
    }

    pub fn is_fixed(&self, a: Fe) -> bool {
        self.raw_sigma_pow(&a, 1 % self.order) == a
    }

    // ---- uncounted arithmetic ----

    #[inline]
    pub(crate) fn raw_add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p;
        let mut out = Fe::ZERO;
        for i in 0..self.m {
            let s = a.0[i] + b.0[i];
            out.0[i] = if s >= p { s - p } else { s };
        }
        out
    }

    #[inline]
    pub(crate) fn raw_sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p;
        let mut out = Fe::ZERO;
        for i in 0..self.m {
            out.0[i] = if a.0[i] >= b.0[i] { a.0[i] - b.0[i] } else { a.0[i] + p - b.0[i] };
        }
        out
    }

    #[inline]
    pub(crate) fn raw_neg(&self, a: &Fe) -> Fe {
        let p = self.p;
        let mut out = Fe::ZERO;
        for i in 0..self.m {
            out.0[i] = if a.0[i] == 0 { 0 } else { p - a.0[i] };
        }
        out
    }

    pub(crate) fn raw_mul(&self, a: &Fe, b: &Fe) -> Fe {
        let m = self.m;
        let p = self.p as u64;
        if m == 1 {
            let mut out = Fe::ZERO;
            out.0[0] = ((a.0[0] as u64 * b.0[0] as u64) % p) as u32;
            return out;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            let x = a.0[i] as u64;
            if x == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x * b.0[j] as u64) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            // z^k = z^{k-m} * z^m, and z^m = -(h_0 + ... + h_{m-1} z^{m-1})
            for t in 0..m {
                let h = self.modulus[t] as u64;
                if h != 0 {
                    prod[k - m + t] = (prod[k - m + t] + (p - h) * c) % p;
                }
            }
        }
        let mut out = Fe::ZERO;
        for i in 0..m {
            out.0[i] = prod[i] as u32;
        }
        out
    }

    pub(crate) fn raw_inv(&self, a: &Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p as u64;
        if self.m == 1 {
            let mut out = Fe::ZERO;
            out.0[0] = fp_poly::inv_mod(a.0[0] as u64, p) as u32;
            return Ok(out);
        }
        let inv = fp_poly::inv_mod_poly(&self.fe_to_poly(a), &self.modulus(), p)
            .ok_or_else(|| Error::InternalInvariant("nonzero element without inverse".into()))?;
        Ok(self.fe_from_poly(&inv))
    }

    /// σ^k for `k` reduced modulo the order of σ.
    pub(crate) fn raw_sigma_pow(&self, a: &Fe, k: usize) -> Fe {
        let k = k % self.order;
        if k == 0 {
            return *a;
        }
        let cols = &self.sigma_cols[k];
        let p = self.p as u64;
        let mut acc = [0u64; MAX_DEGREE];
        for (j, col) in cols.iter().enumerate() {
            let x = a.0[j] as u64;
            if x == 0 {
                continue;
            }
            for i in 0..self.m {
                acc[i] = (acc[i] + x * col.0[i] as u64) % p;
            }
        }
        let mut out = Fe::ZERO;
        for i in 0..self.m {
            out.0[i] = acc[i] as u32;
        }
        out
    }

    pub(crate) fn raw_delta(&self, a: &Fe) -> Fe {
        if !self.has_derivation() {
            return Fe::ZERO;
        }
        let d = self.raw_sub(&self.raw_sigma_pow(a, 1), a);
        self.raw_mul(&self.gamma, &d)
    }

    // ---- counted arithmetic ----

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        counter::bump_add();
        self.raw_add(&a, &b)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        counter::bump_add();
        self.raw_sub(&a, &b)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        self.raw_neg(&a)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        counter::bump_mul();
        let mut out = self.raw_mul(&a, &b);
        if counter::fault_active() && a.0[0] != 0 && b.0[0] != 0 {
            out.0[0] = (out.0[0] + 1) % self.p;
        }
        out
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        counter::bump_inv();
        self.raw_inv(&a)
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        let inv = self.inv(b)?;
        Ok(self.mul(a, inv))
    }

    /// `a^e`; negative exponents invert first.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe> {
        let mut base = if e < 0 { self.inv(a)? } else { a };
        let mut e = e.unsigned_abs();
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// σ(a) = a^(p^r).
    #[inline]
    pub fn sigma(&self, a: Fe) -> Fe {
        counter::bump_aut();
        self.raw_sigma_pow(&a, 1)
    }

    /// σ^k(a) for any integer `k` (negative powers use σ^{-1}).
    pub fn sigma_pow(&self, a: Fe, k: i64) -> Fe {
        counter::bump_aut();
        self.raw_sigma_pow(&a, k.rem_euclid(self.order as i64) as usize)
    }

    /// δ(a) = γ·(σ(a) − a).
    #[inline]
    pub fn delta(&self, a: Fe) -> Fe {
        counter::bump_aut();
        self.raw_delta(&a)
    }
}

fn unit(j: usize) -> Vec<u64> {
    let mut v = vec![0; j + 1];
    v[j] = 1;
    v
}

/// `c(zp)` modulo `h`.
fn compose(c: &[u64], zp: &[u64], h: &[u64], p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for &coef in c.iter().rev() {
        acc = fp_poly::mulmod(&acc, zp, h, p);
        if coef != 0 {
            let mut t = acc.clone();
            if t.is_empty() {
                t.push(0);
            }
            t[0] = (t[0] + coef) % p;
            acc = fp_poly::trim(t);
        }
    }
    acc
}

fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    let mut idx: u64 = 0;
    loop {
        let mut h = fp_poly::digits(idx, p, m);
        h.push(1);
        if fp_poly::is_irreducible(&h, p) {
            return h;
        }
        idx += 1;
    }
}
