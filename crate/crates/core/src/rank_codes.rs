//! Gabidulin codes: encoding by operator evaluation with `b = 1`, rank
//! errors, and unique decoding through the interpolation solver.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::fp_poly::inv_mod;
use crate::functionals::{FunctionalPoint, FunctionalSet};
use crate::knh_fast::{solve, Algorithm, SolveOptions};
use crate::module::{wdeg_pivot, WeightVec};
use crate::skew::{EvalFamily, SkewPoly, SkewRing};

/// Rank over F_p of the `m × len` matrix of base-p digits of `v`.
pub fn rank_over_base(field: &FieldCtx, v: &[Fe]) -> usize {
    let p = field.p();
    let mut rows: Vec<Vec<u64>> = v.iter().map(|&a| field.to_digits(a)).collect();
    let cols = field.m();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| x * inv % p).collect();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for (x, &y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Error word `Σ_l a_l·λ_l` of rank exactly `t` over F_p.
pub fn random_rank_error<R: Rng + ?Sized>(field: &FieldCtx, n: usize, t: usize, rng: &mut R) -> Result<Vec<Fe>> {
    let m = field.m();
    if t > n.min(m) {
        return Err(Error::RankInfeasible { t, n, m });
    }
    if t == 0 {
        return Ok(vec![Fe::ZERO; n]);
    }
    let a = loop {
        let a: Vec<Fe> = (0..t).map(|_| field.random(rng)).collect();
        if rank_over_base(field, &a) == t {
            break a;
        }
    };
    let p = field.p();
    let lambda = loop {
        let l: Vec<Vec<u64>> = (0..t).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        if fp_rank(&l, p) == t {
            break l;
        }
    };
    Ok((0..n)
        .map(|j| {
            (0..t).fold(Fe::ZERO, |acc, l| {
                let c = field.from_int(lambda[l][j] as i64);
                field.add(acc, field.mul(a[l], c))
            })
        })
        .collect())
}

fn fp_rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut rows = rows.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for r in rank + 1..rows.len() {
            let f = rows[r][c] * inv % p;
            for k in 0..cols {
                rows[r][k] = (rows[r][k] + p - f * rows[rank][k] % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of [`GabidulinCode::decode`]. A failure is an ordinary result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded(SkewPoly),
    Failure,
}

#[derive(Clone, Debug)]
pub struct GabidulinCode {
    ring: SkewRing,
    n: usize,
    k: usize,
    points: Vec<Fe>,
}

impl GabidulinCode {
    /// Requires σ the p-Frobenius, δ = 0, `1 ≤ k < n ≤ m` and points
    /// independent over F_p.
    pub fn new(ring: SkewRing, k: usize, points: Vec<Fe>) -> Result<Self> {
        let field = ring.field();
        let n = points.len();
        if field.aut_power() != 1 || field.has_derivation() {
            return Err(Error::InvalidCode("needs σ = Frobenius and δ = 0".into()));
        }
        if n > field.m() || k == 0 || k >= n {
            return Err(Error::InvalidCode(format!("need 1 <= k < n <= m, got n={n} k={k} m={}", field.m())));
        }
        if rank_over_base(field, &points) != n {
            return Err(Error::InvalidCode("evaluation points are dependent over the base field".into()));
        }
        Ok(GabidulinCode { ring, n, k, points })
    }

    /// Points `1, z, …, z^{n−1}`.
    pub fn standard(ring: SkewRing, n: usize, k: usize) -> Result<Self> {
        let m = ring.field().m();
        if n > m {
            return Err(Error::InvalidCode(format!("length {n} exceeds extension degree {m}")));
        }
        let points = (0..n)
            .map(|i| {
                let mut d = vec![0; i + 1];
                d[i] = 1;
                ring.field().from_digits(&d)
            })
            .collect::<Result<_>>()?;
        Self::new(ring, k, points)
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Fe] {
        &self.points
    }

    /// ⌊(n − k)/2⌋.
    pub fn radius(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> SkewPoly {
        SkewPoly::from_coeffs((0..self.k).map(|_| self.ring.field().random(rng)).collect())
    }

    pub fn encode(&self, f: &SkewPoly) -> Result<Vec<Fe>> {
        if let Some(d) = f.degree().filter(|&d| d >= self.k) {
            return Err(Error::DegreeTooLarge { degree: d, bound: self.k });
        }
        Ok(self.points.iter().map(|&g| self.ring.op_eval(f, g, Fe::ONE)).collect())
    }

    /// Functionals `E_i(Q) = Q_0(g_i) + Q_1(r_i)` and weights `(0, k − 1)`.
    pub fn build_decoding_instance(&self, r: &[Fe]) -> Result<(FunctionalSet, WeightVec)> {
        if r.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: r.len() });
        }
        let points = self
            .points
            .iter()
            .zip(r)
            .map(|(&g, &ri)| FunctionalPoint { b: Fe::ONE, u: vec![g, ri] })
            .collect();
        let fs = FunctionalSet::new(self.ring.clone(), EvalFamily::Operator, 2, points)?;
        Ok((fs, WeightVec(vec![0, self.k - 1])))
    }

    /// Unique decoding. Rows of the interpolation basis are tried by
    /// increasing weighted degree; a candidate `f` with `Q_1·f = −Q_0` is
    /// accepted only if `r − encode(f)` has rank at most the radius.
    pub fn decode(&self, r: &[Fe], algorithm: Algorithm) -> Result<DecodeOutcome> {
        let (fs, w) = self.build_decoding_instance(r)?;
        let sol = solve(&fs, &w, algorithm, &SolveOptions::default())?;
        let mut rows = Vec::new();
        for (i, row) in sol.basis.rows().iter().enumerate() {
            if let Some((d, _)) = wdeg_pivot(row, &w)? {
                rows.push((d, i));
            }
        }
        rows.sort_unstable();
        let ring = &self.ring;
        let field = ring.field();
        for (_, i) in rows {
            let row = sol.basis.row(i);
            let (q0, q1) = (&row.0[0], &row.0[1]);
            if q1.is_zero() {
                continue;
            }
            let (f, rem) = ring.left_divmod(&ring.neg(q0), q1)?;
            if !rem.is_zero() || f.degree().is_some_and(|d| d >= self.k) {
                continue;
            }
            let c = self.encode(&f)?;
            let e: Vec<Fe> = r.iter().zip(&c).map(|(&a, &b)| field.sub(a, b)).collect();
            if rank_over_base(field, &e) <= self.radius() {
                return Ok(DecodeOutcome::Decoded(f));
            }
        }
        Ok(DecodeOutcome::Failure)
    }
}
