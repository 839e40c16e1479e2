//! The skew polynomial ring F_{p^m}[x; σ, δ] with `x·a = σ(a)·x + δ(a)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// Default degree threshold below which multiplication and division fall
/// back to the schoolbook routines.
pub const DEFAULT_KARATSUBA_THRESHOLD: usize = 32;

/// A skew polynomial, coefficients ascending. The leading coefficient is
/// always nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SkewPoly {
    coeffs: Vec<Fe>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly{:?}", self.coeffs)
    }
}

impl SkewPoly {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Fe::ONE)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(Fe::ONE, 1)
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: Fe, k: usize) -> Self {
        let mut v = vec![Fe::ZERO; k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `x − a`.
    pub fn linear(field: &FieldCtx, a: Fe) -> Self {
        Self::from_coeffs(vec![field.raw_neg(&a), Fe::ONE])
    }

    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(Fe::is_zero) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial (degree −∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Fe::is_one)
    }

    pub fn lead(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    /// `self · x^k`; right multiplication by a power of `x` is a plain shift.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        SkewPoly { coeffs: v }
    }
}

/// Which evaluation map a point refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalFamily {
    /// Generalized operator evaluation `f(c)_b = Σ f_i D_b^i(c)` with
    /// `D_b(c) = σ(c)·b + δ(c)`.
    Operator,
    /// Remainder evaluation `f(p) = f mod_r (x − p)`.
    Remainder,
}

/// Skew polynomial arithmetic over a fixed field context.
///
/// Cloning is cheap; the field context is shared.
#[derive(Clone, Debug)]
pub struct SkewRing {
    field: Arc<FieldCtx>,
    karatsuba: Option<usize>,
}

impl SkewRing {
    pub fn new(field: FieldCtx) -> Self {
        Self::from_arc(Arc::new(field))
    }

    pub fn from_arc(field: Arc<FieldCtx>) -> Self {
        SkewRing {
            field,
            karatsuba: Some(DEFAULT_KARATSUBA_THRESHOLD),
        }
    }

    /// Enables the sub-quadratic multiplication and division path above the
    /// given degree threshold, or disables it with `None`.
    ///
    /// The fast path is only taken when δ = 0; with a nonzero derivation the
    /// ring is not graded in `x` and everything runs through the schoolbook
    /// routines.
    pub fn with_karatsuba(mut self, threshold: Option<usize>) -> Self {
        self.karatsuba = threshold.map(|t| t.max(1));
        self
    }

    pub fn karatsuba_threshold(&self) -> Option<usize> {
        self.karatsuba
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Human-readable form, highest degree first: `x^2 + (a+1)x + a`.
    pub fn format(&self, f: &SkewPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let fd = &*self.field;
        let terms: Vec<String> = (0..f.coeffs.len())
            .rev()
            .filter(|&i| !f.coeffs[i].is_zero())
            .map(|i| {
                let c = fd.format(f.coeffs[i]);
                let mono = match i {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                };
                if i == 0 {
                    if c.contains('+') && f.coeffs.len() > 1 {
                        format!("({c})")
                    } else {
                        c
                    }
                } else if c == "1" {
                    mono
                } else if c.contains('+') {
                    format!("({c}){mono}")
                } else {
                    format!("{c}{mono}")
                }
            })
            .collect();
        terms.join(" + ")
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    fn fast_threshold(&self) -> Option<usize> {
        if self.field.has_derivation() {
            None
        } else {
            self.karatsuba
        }
    }

    // ---- additive structure ----

    pub fn add(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(self.add_slices(&f.coeffs, &g.coeffs))
    }

    pub fn sub(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(self.sub_slices(&f.coeffs, &g.coeffs))
    }

    pub fn neg(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly {
            coeffs: f.coeffs.iter().map(|&c| self.field.neg(c)).collect(),
        }
    }

    fn add_slices(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, &y) in out.iter_mut().zip(short) {
            *o = self.field.add(*o, y);
        }
        out
    }

    fn sub_slices(&self, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), Fe::ZERO);
        }
        for (o, &y) in out.iter_mut().zip(b) {
            *o = self.field.sub(*o, y);
        }
        out
    }

    /// Left scalar multiple `c·f`.
    pub fn scale(&self, c: Fe, f: &SkewPoly) -> SkewPoly {
        if c.is_zero() {
            return SkewPoly::zero();
        }
        SkewPoly::from_coeffs(f.coeffs.iter().map(|&a| self.field.mul(c, a)).collect())
    }

    /// Normalizes to leading coefficient one by a left scalar; zero stays zero.
    pub fn monic(&self, f: &SkewPoly) -> Result<SkewPoly> {
        match f.lead() {
            None => Ok(SkewPoly::zero()),
            Some(l) if l.is_one() => Ok(f.clone()),
            Some(l) => Ok(self.scale(self.field.inv(l)?, f)),
        }
    }

    // ---- multiplication ----

    /// `x·f = Σ σ(f_i)·x^{i+1} + δ(f_i)·x^i`.
    pub fn mul_x(&self, f: &SkewPoly) -> SkewPoly {
        SkewPoly::from_coeffs(self.mul_x_slice(&f.coeffs))
    }

    fn mul_x_slice(&self, f: &[Fe]) -> Vec<Fe> {
        let fd = &*self.field;
        let mut out = vec![Fe::ZERO; f.len() + 1];
        let deriv = fd.has_derivation();
        for (i, &c) in f.iter().enumerate() {
            out[i + 1] = fd.add(out[i + 1], fd.sigma(c));
            if deriv {
                out[i] = fd.add(out[i], fd.delta(c));
            }
        }
        out
    }

    /// `(x − a)·f`.
    pub fn mul_linear_left(&self, a: Fe, f: &SkewPoly) -> SkewPoly {
        self.sub(&self.mul_x(f), &self.scale(a, f))
    }

    /// The twisted product `f·g`.
    pub fn mul(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        let out = match self.fast_threshold() {
            Some(t) => self.kmul(&f.coeffs, &g.coeffs, t),
            None => self.schoolbook(&f.coeffs, &g.coeffs),
        };
        SkewPoly::from_coeffs(out)
    }

    /// Reference multiplication, never using the Karatsuba path.
    pub fn mul_schoolbook(&self, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
        if f.is_zero() || g.is_zero() {
            return SkewPoly::zero();
        }
        SkewPoly::from_coeffs(self.schoolbook(&f.coeffs, &g.coeffs))
    }

    /// `(x^k·g)` for `k = 0..count` when δ ≠ 0, built by repeated `x·`.
    fn x_powers_times(&self, g: &[Fe], count: usize) -> Vec<Vec<Fe>> {
        let mut out = Vec::with_capacity(count);
        let mut h = g.to_vec();
        for k in 0..count {
            if k > 0 {
                h = self.mul_x_slice(&h);
            }
            out.push(h.clone());
        }
        out
    }

    /// σ^k applied coefficientwise.
    fn sigma_slice(&self, g: &[Fe], k: usize) -> Vec<Fe> {
        if k % self.field.sigma_order() == 0 {
            return g.to_vec();
        }
        g.iter().map(|&c| self.field.sigma_pow(c, k as i64)).collect()
    }

    fn schoolbook(&self, f: &[Fe], g: &[Fe]) -> Vec<Fe> {
        let fd = &*self.field;
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Fe::ZERO; f.len() + g.len() - 1];
        if fd.has_derivation() {
            let mut h = g.to_vec();
            for (i, &fi) in f.iter().enumerate() {
                if i > 0 {
                    h = self.mul_x_slice(&h);
                }
                if fi.is_zero() {
                    continue;
                }
                for (j, &hj) in h.iter().enumerate() {
                    out[j] = fd.add(out[j], fd.mul(fi, hj));
                }
            }
        } else {
            let order = fd.sigma_order();
            let twisted: Vec<Vec<Fe>> = (0..order.min(f.len())).map(|k| self.sigma_slice(g, k)).collect();
            for (i, &fi) in f.iter().enumerate() {
                if fi.is_zero() {
                    continue;
                }
                let gi = &twisted[i % order];
                for (j, &gj) in gi.iter().enumerate() {
                    out[i + j] = fd.add(out[i + j], fd.mul(fi, gj));
                }
            }
        }
        out
    }

    /// Karatsuba multiplication for δ = 0. Splits happen at multiples of
    /// the order of σ, where `x^k` is central.
    fn kmul(&self, f: &[Fe], g: &[Fe], thr: usize) -> Vec<Fe> {
        let (a, b) = (f.len(), g.len());
        if a == 0 || b == 0 {
            return Vec::new();
        }
        if a.min(b) <= thr {
            return self.schoolbook(f, g);
        }
        let order = self.field.sigma_order();
        let mut out = vec![Fe::ZERO; a + b - 1];
        if b > 2 * a {
            // f·g = Σ (f·g_c)·x^{c·a}: right shifts need no centrality.
            for (c, chunk) in g.chunks(a).enumerate() {
                let part = self.kmul(f, chunk, thr);
                self.accumulate(&mut out, &part, c * a);
            }
            return out;
        }
        if a > 2 * b {
            let len = b.div_ceil(order) * order;
            if len < a {
                for (c, chunk) in f.chunks(len).enumerate() {
                    let part = self.kmul(chunk, g, thr);
                    self.accumulate(&mut out, &part, c * len);
                }
                return out;
            }
        }
        let short = a.min(b);
        let mut k = a.max(b).div_ceil(2).div_ceil(order) * order;
        if k >= short {
            k = (short - 1) / order * order;
        }
        if k == 0 {
            return self.schoolbook(f, g);
        }
        let (f0, f1) = f.split_at(k);
        let (g0, g1) = g.split_at(k);
        let p0 = self.kmul(f0, g0, thr);
        let p2 = self.kmul(f1, g1, thr);
        let fs = self.add_slices(f0, f1);
        let gs = self.add_slices(g0, g1);
        let mut mid = self.kmul(&fs, &gs, thr);
        for (i, &c) in p0.iter().enumerate() {
            mid[i] = self.field.sub(mid[i], c);
        }
        for (i, &c) in p2.iter().enumerate() {
            mid[i] = self.field.sub(mid[i], c);
        }
        self.accumulate(&mut out, &p0, 0);
        self.accumulate(&mut out, &mid, k);
        self.accumulate(&mut out, &p2, 2 * k);
        out
    }

    fn accumulate(&self, out: &mut [Fe], part: &[Fe], offset: usize) {
        for (i, &c) in part.iter().enumerate() {
            if out.len() <= offset + i {
                debug_assert!(c.is_zero());
                continue;
            }
            out[offset + i] = self.field.add(out[offset + i], c);
        }
    }

    // ---- division ----

    /// Right division: `f = quo·g + rem` with `deg rem < deg g`.
    pub fn right_divmod(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if f.coeffs.len() < g.coeffs.len() {
            return Ok((SkewPoly::zero(), f.clone()));
        }
        match self.fast_threshold() {
            Some(thr) => {
                let lead_inv = self.field.inv(g.lead().unwrap())?;
                let q = SkewPoly::from_coeffs(self.fast_quo(&f.coeffs, &g.coeffs, lead_inv, thr));
                let r = self.sub(f, &self.mul(&q, g));
                if r.coeffs.len() >= g.coeffs.len() {
                    return Err(Error::InternalInvariant("right division did not reduce the degree".into()));
                }
                Ok((q, r))
            }
            None => self.right_divmod_schoolbook(f, g),
        }
    }

    /// Remainder of the right division, `f mod_r g`.
    pub fn right_rem(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.right_divmod(f, g)?.1)
    }

    /// Reference right division by coefficient elimination.
    pub fn right_divmod_schoolbook(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if f.coeffs.len() < g.coeffs.len() {
            return Ok((SkewPoly::zero(), f.clone()));
        }
        let fd = &*self.field;
        let n = g.coeffs.len() - 1;
        let d = f.coeffs.len() - 1 - n;
        let lead_inv = fd.inv(g.lead().unwrap())?;
        let mut r = f.coeffs.clone();
        let mut q = vec![Fe::ZERO; d + 1];
        if fd.has_derivation() {
            let xg = self.x_powers_times(&g.coeffs, d + 1);
            for k in (0..=d).rev() {
                let top = r[n + k];
                if top.is_zero() {
                    continue;
                }
                let c = fd.mul(top, fd.sigma_pow(lead_inv, k as i64));
                q[k] = c;
                for (j, &h) in xg[k].iter().enumerate() {
                    r[j] = fd.sub(r[j], fd.mul(c, h));
                }
            }
        } else {
            let order = fd.sigma_order();
            let twisted: Vec<Vec<Fe>> = (0..order.min(d + 1)).map(|k| self.sigma_slice(&g.coeffs, k)).collect();
            for k in (0..=d).rev() {
                let top = r[n + k];
                if top.is_zero() {
                    continue;
                }
                let c = fd.mul(top, fd.sigma_pow(lead_inv, k as i64));
                q[k] = c;
                for (j, &h) in twisted[k % order].iter().enumerate() {
                    r[k + j] = fd.sub(r[k + j], fd.mul(c, h));
                }
            }
        }
        r.truncate(n);
        Ok((SkewPoly::from_coeffs(q), SkewPoly::from_coeffs(r)))
    }

    /// Quotient of right division for δ = 0 by recursive halving of the
    /// quotient. Only the top `deg f − deg g + 1` coefficients of both
    /// operands influence the quotient, which keeps every subproblem
    /// balanced.
    fn fast_quo(&self, f: &[Fe], g: &[Fe], lead_inv: Fe, thr: usize) -> Vec<Fe> {
        let fd = &*self.field;
        let n = g.len() - 1;
        let f = trim_slice(f);
        if f.len() < g.len() {
            return Vec::new();
        }
        let d = f.len() - 1 - n;
        if n > d {
            let t = n - d;
            return self.fast_quo(&f[t..], &g[t..], lead_inv, thr);
        }
        if d < thr {
            let mut r = f.to_vec();
            let mut q = vec![Fe::ZERO; d + 1];
            let order = fd.sigma_order();
            let twisted: Vec<Vec<Fe>> = (0..order.min(d + 1)).map(|k| self.sigma_slice(g, k)).collect();
            for k in (0..=d).rev() {
                let top = r[n + k];
                if top.is_zero() {
                    continue;
                }
                let c = fd.mul(top, fd.sigma_pow(lead_inv, k as i64));
                q[k] = c;
                // only coefficients that can still reach the top matter
                for (j, &h) in twisted[k % order].iter().enumerate().skip(n.saturating_sub(k)) {
                    r[k + j] = fd.sub(r[k + j], fd.mul(c, h));
                }
            }
            return q;
        }
        let k = (d + 1) / 2;
        // f = f_hi·x^k + f_lo, and x^k·g = σ^k(g)·x^k
        let gk = self.sigma_slice(g, k);
        let lead_k = fd.sigma_pow(lead_inv, k as i64);
        let q_hi = self.fast_quo(&f[k..], &gk, lead_k, thr);
        let prod = self.kmul(&q_hi, &gk, thr);
        let mut rest = f.to_vec();
        for (i, &c) in prod.iter().enumerate() {
            rest[k + i] = fd.sub(rest[k + i], c);
        }
        let q_lo = self.fast_quo(&rest, g, lead_inv, thr);
        let mut q = q_lo;
        q.resize(k, Fe::ZERO);
        q.extend_from_slice(&q_hi);
        q
    }

    /// Left division: `f = g·quo + rem` with `deg rem < deg g`.
    pub fn left_divmod(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if f.coeffs.len() < g.coeffs.len() {
            return Ok((SkewPoly::zero(), f.clone()));
        }
        let fd = &*self.field;
        let n = g.coeffs.len() - 1;
        let lead_inv = fd.inv(g.lead().unwrap())?;
        let mut r = f.clone();
        let mut q = vec![Fe::ZERO; f.coeffs.len() - n];
        for k in (0..q.len()).rev() {
            let top = r.coeff(k + n);
            if top.is_zero() {
                continue;
            }
            // g·(c x^k) has leading coefficient g_n σ^n(c)
            let c = fd.sigma_pow(fd.mul(top, lead_inv), -(n as i64));
            q[k] = c;
            let term = self.mul_schoolbook(g, &SkewPoly::constant(c)).shift(k);
            r = self.sub(&r, &term);
        }
        if r.degree().is_some_and(|d| d >= n) {
            return Err(Error::InternalInvariant("left division did not reduce the degree".into()));
        }
        Ok((SkewPoly::from_coeffs(q), r))
    }

    // ---- gcrd / lclm ----

    /// Monic greatest common right divisor and monic least common left
    /// multiple, via the extended right Euclidean algorithm.
    ///
    /// With one operand zero the gcrd is the other operand made monic and
    /// the lclm is zero.
    pub fn gcrd_lclm(&self, f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        match (f.is_zero(), g.is_zero()) {
            (true, true) => return Err(Error::BothZero),
            (true, false) => return Ok((self.monic(g)?, SkewPoly::zero())),
            (false, true) => return Ok((self.monic(f)?, SkewPoly::zero())),
            _ => {}
        }
        // r_i = s_i·f + t_i·g
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (SkewPoly::one(), SkewPoly::zero());
        while !r1.is_zero() {
            let (q, r) = self.right_divmod(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // s1·f = −t1·g is the least common left multiple
        let lclm = self.monic(&self.mul(&s1, f))?;
        Ok((self.monic(&r0)?, lclm))
    }

    pub fn lclm(&self, f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        Ok(self.gcrd_lclm(f, g)?.1)
    }

    // ---- evaluation ----

    /// `D_b(c) = σ(c)·b + δ(c)`.
    #[inline]
    pub fn d_map(&self, c: Fe, b: Fe) -> Fe {
        let fd = &*self.field;
        let s = fd.mul(fd.sigma(c), b);
        if fd.has_derivation() {
            fd.add(s, fd.delta(c))
        } else {
            s
        }
    }

    /// Generalized operator evaluation `f(c)_b = Σ_i f_i·D_b^i(c)`.
    pub fn op_eval(&self, f: &SkewPoly, c: Fe, b: Fe) -> Fe {
        let fd = &*self.field;
        let mut acc = Fe::ZERO;
        let mut t = c;
        for (i, &fi) in f.coeffs.iter().enumerate() {
            if i > 0 {
                t = self.d_map(t, b);
            }
            acc = fd.add(acc, fd.mul(fi, t));
        }
        acc
    }

    /// Remainder evaluation `f mod_r (x − b)`, computed as `Σ f_i N_i(b)`
    /// with `N_0 = 1`, `N_{i+1} = σ(N_i)·b + δ(N_i)`.
    pub fn rem_eval(&self, f: &SkewPoly, b: Fe) -> Fe {
        self.op_eval(f, Fe::ONE, b)
    }

    /// Evaluation of `f` at a point of the given family. `param` is the
    /// operator parameter `b` and is ignored for remainder evaluation.
    pub fn eval(&self, family: EvalFamily, f: &SkewPoly, point: Fe, param: Fe) -> Fe {
        match family {
            EvalFamily::Operator => self.op_eval(f, point, param),
            EvalFamily::Remainder => self.rem_eval(f, point),
        }
    }

    /// The σ-conjugate `a^c = D_a(c)·c^{-1}` of `a` by a nonzero `c`.
    pub fn conjugate(&self, a: Fe, c: Fe) -> Result<Fe> {
        let inv = self.field.inv(c)?;
        Ok(self.field.mul(self.d_map(c, a), inv))
    }

    /// Monic polynomial of least degree vanishing at a single point.
    ///
    /// Operator family: `x − D_b(u)·u^{-1}`, or `1` for `u = 0`.
    /// Remainder family: `x − point`.
    pub fn annihilator(&self, family: EvalFamily, point: Fe, b: Fe) -> SkewPoly {
        match family {
            EvalFamily::Operator => {
                if point.is_zero() {
                    SkewPoly::one()
                } else {
                    let a = self.conjugate(b, point).expect("nonzero point");
                    SkewPoly::linear(&self.field, a)
                }
            }
            EvalFamily::Remainder => SkewPoly::linear(&self.field, point),
        }
    }

    /// Monic least common left multiple of the annihilators of a point set,
    /// built one point at a time: whenever the current polynomial does not
    /// vanish at the next point, it is left-multiplied by the annihilator of
    /// its value there.
    ///
    /// For the operator family `params[i]` is the parameter `b` of
    /// `points[i]`; for the remainder family `params` is ignored.
    pub fn min_poly_set(&self, family: EvalFamily, points: &[Fe], params: &[Fe]) -> Result<SkewPoly> {
        if family == EvalFamily::Operator && params.len() != points.len() {
            return Err(Error::LengthMismatch {
                expected: points.len(),
                found: params.len(),
            });
        }
        let mut m = SkewPoly::one();
        for (i, &pt) in points.iter().enumerate() {
            let param = params.get(i).copied().unwrap_or(Fe::ZERO);
            let e = self.eval(family, &m, pt, param);
            if e.is_zero() {
                continue;
            }
            // product rules: (h·m)(u)_b = h(m(u)_b)_b, (h·m)(p) = h(p^{m(p)})·m(p)
            let a = match family {
                EvalFamily::Operator => self.conjugate(param, e)?,
                EvalFamily::Remainder => self.conjugate(pt, e)?,
            };
            m = self.mul_linear_left(a, &m);
        }
        Ok(m)
    }
}

fn trim_slice(f: &[Fe]) -> &[Fe] {
    let len = f.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
    &f[..len]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4(gamma: bool) -> SkewRing {
        let f = FieldCtx::new(2, 2, Some(&[1, 1, 1])).unwrap();
        let f = if gamma { f.with_derivation(Fe::ONE) } else { f };
        SkewRing::new(f)
    }

    fn poly(r: &SkewRing, idx: &[u64]) -> SkewPoly {
        SkewPoly::from_coeffs(idx.iter().map(|&i| r.field().from_index(i)).collect())
    }

    // F_4 indices: 0, 1, α = 2, α² = 3
    const A: u64 = 2;
    const A2: u64 = 3;

    #[test]
    fn mul_examples_f4() {
        let r = f4(false);
        let x = SkewPoly::x();
        assert_eq!(r.mul(&x, &poly(&r, &[0, A])), poly(&r, &[0, 0, A2]));
        assert_eq!(r.mul(&poly(&r, &[1, 1]), &poly(&r, &[A, 1])), poly(&r, &[A, A, 1]));
        let rd = f4(true);
        assert_eq!(rd.mul(&x, &poly(&rd, &[A])), poly(&rd, &[1, A2]));
    }

    #[test]
    fn right_division_examples() {
        let r = f4(false);
        let f = poly(&r, &[1, 0, 1]);
        let g = poly(&r, &[1, 1]);
        assert_eq!(r.right_divmod(&f, &g).unwrap(), (g.clone(), SkewPoly::zero()));
        assert_eq!(r.right_divmod(&f, &SkewPoly::one()).unwrap(), (f.clone(), SkewPoly::zero()));
        let a = poly(&r, &[A]);
        assert_eq!(r.right_divmod(&a, &g).unwrap(), (SkewPoly::zero(), a.clone()));
        assert!(matches!(r.right_divmod(&f, &SkewPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn left_division_examples() {
        let r = f4(false);
        let f = poly(&r, &[1, 0, 1]);
        let g = poly(&r, &[1, 1]);
        assert_eq!(r.left_divmod(&f, &g).unwrap(), (g.clone(), SkewPoly::zero()));
        let x = SkewPoly::x();
        assert_eq!(r.left_divmod(&poly(&r, &[0, 0, 1]), &x).unwrap(), (x.clone(), SkewPoly::zero()));
        let a = poly(&r, &[A]);
        assert_eq!(r.left_divmod(&a, &x).unwrap(), (SkewPoly::zero(), a));
        assert!(matches!(r.left_divmod(&f, &SkewPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn gcrd_lclm_examples() {
        let r = f4(false);
        let xm1 = poly(&r, &[1, 1]);
        assert_eq!(r.gcrd_lclm(&xm1, &xm1).unwrap(), (xm1.clone(), xm1.clone()));
        let (g, l) = r.gcrd_lclm(&poly(&r, &[A, 1]), &poly(&r, &[A2, 1])).unwrap();
        assert_eq!(g, SkewPoly::one());
        assert_eq!(l, poly(&r, &[1, 0, 1]));
        let (g, l) = r.gcrd_lclm(&poly(&r, &[1, 0, 1]), &xm1).unwrap();
        assert_eq!(g, xm1);
        assert_eq!(l, poly(&r, &[1, 0, 1]));
        assert!(matches!(r.gcrd_lclm(&SkewPoly::zero(), &SkewPoly::zero()), Err(Error::BothZero)));
    }

    #[test]
    fn evaluation_examples() {
        let r = f4(false);
        let fd = r.field().clone();
        let a = fd.gen();
        assert_eq!(r.op_eval(&SkewPoly::x(), a, Fe::ONE), fd.mul(a, a));
        assert_eq!(r.op_eval(&poly(&r, &[1, 0, 1]), a, Fe::ONE), Fe::ZERO);
        assert_eq!(r.op_eval(&poly(&r, &[1, A, 3]), Fe::ZERO, a), Fe::ZERO);
        assert_eq!(r.rem_eval(&poly(&r, &[0, 0, 1]), Fe::ONE), Fe::ONE);
        let b = fd.from_index(A2);
        assert_eq!(r.rem_eval(&SkewPoly::linear(&fd, b), b), Fe::ZERO);
        assert_eq!(r.rem_eval(&SkewPoly::constant(a), b), a);
    }

    #[test]
    fn annihilator_examples() {
        let r = f4(false);
        let a = r.field().gen();
        assert_eq!(r.annihilator(EvalFamily::Operator, a, Fe::ONE), poly(&r, &[A, 1]));
        assert_eq!(r.annihilator(EvalFamily::Operator, Fe::ZERO, Fe::ONE), SkewPoly::one());
        assert_eq!(r.annihilator(EvalFamily::Remainder, a, Fe::ZERO), poly(&r, &[A, 1]));
    }

    #[test]
    fn min_poly_set_examples() {
        let r = f4(false);
        let fd = r.field().clone();
        let pts = [fd.gen(), fd.from_index(A2)];
        let m = r.min_poly_set(EvalFamily::Operator, &pts, &[Fe::ONE, Fe::ONE]).unwrap();
        assert_eq!(m, poly(&r, &[1, 0, 1]));
        assert_eq!(r.min_poly_set(EvalFamily::Operator, &[], &[]).unwrap(), SkewPoly::one());
        let m = r.min_poly_set(EvalFamily::Remainder, &[Fe::ONE], &[]).unwrap();
        assert_eq!(m, poly(&r, &[1, 1]));
    }

    fn rings() -> Vec<SkewRing> {
        let mut out = Vec::new();
        for (p, m) in [(2u64, 2usize), (2, 4), (3, 2), (5, 3), (2, 8), (7, 1)] {
            for r in 0..m {
                let f = FieldCtx::new(p, m, None).unwrap().with_automorphism(r).unwrap();
                let g = f.gen();
                out.push(SkewRing::new(f.clone()).with_karatsuba(Some(2)));
                out.push(SkewRing::new(f.with_derivation(g)));
            }
        }
        out
    }

    fn random_poly<R: Rng>(ring: &SkewRing, rng: &mut R, max_deg: usize) -> SkewPoly {
        let d = rng.gen_range(0..=max_deg);
        SkewPoly::from_coeffs((0..=d).map(|_| ring.field().random(rng)).collect())
    }

    #[test]
    fn ring_laws_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ring in rings() {
            for _ in 0..30 {
                let f = random_poly(&ring, &mut rng, 12);
                let g = random_poly(&ring, &mut rng, 12);
                let h = random_poly(&ring, &mut rng, 12);
                assert_eq!(ring.mul(&ring.mul(&f, &g), &h), ring.mul(&f, &ring.mul(&g, &h)));
                assert_eq!(ring.mul(&f, &ring.add(&g, &h)), ring.add(&ring.mul(&f, &g), &ring.mul(&f, &h)));
                assert_eq!(ring.mul(&ring.add(&g, &h), &f), ring.add(&ring.mul(&g, &f), &ring.mul(&h, &f)));
                if !f.is_zero() && !g.is_zero() {
                    let fg = ring.mul(&f, &g);
                    assert_eq!(fg.degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
                }
            }
        }
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for ring in rings() {
            for _ in 0..20 {
                let f = random_poly(&ring, &mut rng, 90);
                let g = random_poly(&ring, &mut rng, 40);
                assert_eq!(ring.mul(&f, &g), ring.mul_schoolbook(&f, &g));
                assert_eq!(ring.mul(&g, &f), ring.mul_schoolbook(&g, &f));
            }
        }
    }

    #[test]
    fn divisions_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for ring in rings() {
            for _ in 0..20 {
                let f = random_poly(&ring, &mut rng, 70);
                let g = random_poly(&ring, &mut rng, 25);
                if g.is_zero() {
                    continue;
                }
                let (q, r) = ring.right_divmod(&f, &g).unwrap();
                assert_eq!(ring.add(&ring.mul(&q, &g), &r), f);
                assert!(r.degree() < g.degree());
                assert_eq!((q, r), ring.right_divmod_schoolbook(&f, &g).unwrap());
                let (q, r) = ring.left_divmod(&f, &g).unwrap();
                assert_eq!(ring.add(&ring.mul(&g, &q), &r), f);
                assert!(r.degree() < g.degree());
            }
        }
    }

    #[test]
    fn remainder_evaluation_is_right_remainder() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for ring in rings() {
            for _ in 0..20 {
                let f = random_poly(&ring, &mut rng, 15);
                let b = ring.field().random(&mut rng);
                let rem = ring.right_rem(&f, &SkewPoly::linear(ring.field(), b)).unwrap();
                assert_eq!(rem.coeff(0), ring.rem_eval(&f, b));
            }
        }
    }

    #[test]
    fn evaluation_product_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for ring in rings() {
            let fd = ring.field().clone();
            for _ in 0..40 {
                let f = random_poly(&ring, &mut rng, 8);
                let g = random_poly(&ring, &mut rng, 8);
                let c = fd.random(&mut rng);
                let b = fd.random(&mut rng);
                let fg = ring.mul(&f, &g);
                assert_eq!(ring.op_eval(&fg, c, b), ring.op_eval(&f, ring.op_eval(&g, c, b), b));
                // operator evaluation is remainder evaluation at a conjugate
                if !c.is_zero() {
                    let conj = ring.conjugate(b, c).unwrap();
                    assert_eq!(ring.op_eval(&f, c, b), fd.mul(ring.rem_eval(&f, conj), c));
                }
                // right factor vanishing
                let h = ring.mul(&f, &SkewPoly::linear(&fd, b));
                assert_eq!(ring.rem_eval(&h, b), Fe::ZERO);
            }
        }
    }

    #[test]
    fn operator_evaluation_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for ring in rings() {
            let fd = ring.field().clone();
            for _ in 0..40 {
                let f = random_poly(&ring, &mut rng, 8);
                let (a, c, b) = (fd.random(&mut rng), fd.random(&mut rng), fd.random(&mut rng));
                let (lam, mu) = (fd.random_fixed(&mut rng), fd.random_fixed(&mut rng));
                let lhs = ring.op_eval(&f, fd.add(fd.mul(lam, a), fd.mul(mu, c)), b);
                let rhs = fd.add(fd.mul(lam, ring.op_eval(&f, a, b)), fd.mul(mu, ring.op_eval(&f, c, b)));
                assert_eq!(lhs, rhs);
                let k = fd.random(&mut rng);
                assert_eq!(ring.op_eval(&ring.scale(k, &f), a, b), fd.mul(k, ring.op_eval(&f, a, b)));
            }
        }
    }

    #[test]
    fn lclm_properties_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for ring in rings() {
            for _ in 0..20 {
                let f = random_poly(&ring, &mut rng, 6);
                let g = random_poly(&ring, &mut rng, 6);
                if f.is_zero() || g.is_zero() {
                    continue;
                }
                let (d, l) = ring.gcrd_lclm(&f, &g).unwrap();
                assert!(d.is_monic() && l.is_monic());
                assert!(ring.right_rem(&f, &d).unwrap().is_zero());
                assert!(ring.right_rem(&g, &d).unwrap().is_zero());
                assert!(ring.right_rem(&l, &f).unwrap().is_zero());
                assert!(ring.right_rem(&l, &g).unwrap().is_zero());
                assert_eq!(
                    l.degree().unwrap() + d.degree().unwrap(),
                    f.degree().unwrap() + g.degree().unwrap()
                );
            }
        }
    }

    #[test]
    fn min_poly_set_annihilates_and_matches_lclm() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for ring in rings() {
            let fd = ring.field().clone();
            for family in [EvalFamily::Operator, EvalFamily::Remainder] {
                let n = rng.gen_range(0..6);
                let pts: Vec<Fe> = (0..n).map(|_| fd.random(&mut rng)).collect();
                let params: Vec<Fe> = (0..n).map(|_| fd.random(&mut rng)).collect();
                let m = ring.min_poly_set(family, &pts, &params).unwrap();
                assert!(m.is_monic());
                let mut l = SkewPoly::one();
                for i in 0..n {
                    assert_eq!(ring.eval(family, &m, pts[i], params[i]), Fe::ZERO);
                    let ann = ring.annihilator(family, pts[i], params[i]);
                    l = ring.lclm(&l, &ann).unwrap();
                }
                assert_eq!(m, l);
            }
        }
    }
}
