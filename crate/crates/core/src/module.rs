//! Vectors and square matrices over the skew ring, weighted degrees, pivots
//! and the weak Popov check.

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::skew::{SkewPoly, SkewRing};

/// Largest supported vector width `s + 1`.
pub const MAX_WIDTH: usize = 17;

/// A row vector of skew polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SkewVec(pub Vec<SkewPoly>);

/// Non-negative integer weights, one per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeightVec(pub Vec<usize>);

/// A dense matrix stored as rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SkewMat {
    rows: Vec<SkewVec>,
}

impl SkewVec {
    pub fn zero(len: usize) -> Self {
        SkewVec(vec![SkewPoly::zero(); len])
    }

    /// The `j`-th unit vector.
    pub fn unit(len: usize, j: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[j] = SkewPoly::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(SkewPoly::is_zero)
    }

    pub fn entries(&self) -> &[SkewPoly] {
        &self.0
    }

    /// Maximum coefficient degree over all entries.
    pub fn max_degree(&self) -> Option<usize> {
        self.0.iter().filter_map(SkewPoly::degree).max()
    }
}

impl From<Vec<SkewPoly>> for SkewVec {
    fn from(v: Vec<SkewPoly>) -> Self {
        SkewVec(v)
    }
}

impl WeightVec {
    pub fn zeros(len: usize) -> Self {
        WeightVec(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for WeightVec {
    fn from(v: Vec<usize>) -> Self {
        WeightVec(v)
    }
}

impl SkewMat {
    pub fn identity(n: usize) -> Self {
        SkewMat {
            rows: (0..n).map(|j| SkewVec::unit(n, j)).collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SkewMat {
            rows: vec![SkewVec::zero(cols); rows],
        }
    }

    /// Fails on ragged input.
    pub fn from_rows(rows: Vec<SkewVec>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let c = first.len();
            if let Some(bad) = rows.iter().find(|r| r.len() != c) {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {c} columns",
                    bad.len()
                )));
            }
        }
        Ok(SkewMat { rows })
    }

    pub fn rows(&self) -> &[SkewVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SkewVec> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &SkewVec {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut SkewVec {
        &mut self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &SkewPoly {
        &self.rows[i].0[j]
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, SkewVec::len)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n_rows())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.rows.iter().filter_map(SkewVec::max_degree).max()
    }
}

/// `deg_w(v) = max_j (deg v_j + w_j)` and the largest index attaining it;
/// `None` for the zero vector.
pub fn wdeg_pivot(v: &SkewVec, w: &WeightVec) -> Result<Option<(usize, usize)>> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: w.len(),
            found: v.len(),
        });
    }
    let mut best: Option<(usize, usize)> = None;
    for (j, (p, &wj)) in v.0.iter().zip(&w.0).enumerate() {
        if let Some(d) = p.degree() {
            let dw = d + wj;
            if best.is_none_or(|(b, _)| dw >= b) {
                best = Some((dw, j));
            }
        }
    }
    Ok(best)
}

/// Weighted degree only.
pub fn wdeg(v: &SkewVec, w: &WeightVec) -> Result<Option<usize>> {
    Ok(wdeg_pivot(v, w)?.map(|(d, _)| d))
}

/// Whether the rows are nonzero with strictly increasing pivot indices.
pub fn is_wowpb(b: &SkewMat, w: &WeightVec) -> bool {
    let mut last: Option<usize> = None;
    for row in b.rows() {
        match wdeg_pivot(row, w) {
            Ok(Some((_, piv))) => {
                if last.is_some_and(|l| piv <= l) {
                    return false;
                }
                last = Some(piv);
            }
            _ => return false,
        }
    }
    true
}

pub fn vec_add(ring: &SkewRing, a: &SkewVec, b: &SkewVec) -> SkewVec {
    SkewVec(a.0.iter().zip(&b.0).map(|(x, y)| ring.add(x, y)).collect())
}

pub fn vec_sub(ring: &SkewRing, a: &SkewVec, b: &SkewVec) -> SkewVec {
    SkewVec(a.0.iter().zip(&b.0).map(|(x, y)| ring.sub(x, y)).collect())
}

/// Left scalar multiple.
pub fn vec_scale(ring: &SkewRing, c: Fe, v: &SkewVec) -> SkewVec {
    SkewVec(v.0.iter().map(|p| ring.scale(c, p)).collect())
}

/// `x·v`.
pub fn vec_mul_x(ring: &SkewRing, v: &SkewVec) -> SkewVec {
    SkewVec(v.0.iter().map(|p| ring.mul_x(p)).collect())
}

/// `(x − c)·v`.
pub fn vec_mul_linear(ring: &SkewRing, c: Fe, v: &SkewVec) -> SkewVec {
    SkewVec(v.0.iter().map(|p| ring.mul_linear_left(c, p)).collect())
}

/// Row vector times matrix: `Σ_j a_j·B_j`.
pub fn vec_mat_mul(ring: &SkewRing, a: &SkewVec, b: &SkewMat) -> Result<SkewVec> {
    if a.len() != b.n_rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} times {}x{} matrix",
            a.len(),
            b.n_rows(),
            b.n_cols()
        )));
    }
    let cols = b.n_cols();
    let mut out = SkewVec::zero(cols);
    for (aj, row) in a.0.iter().zip(b.rows()) {
        if aj.is_zero() {
            continue;
        }
        for (k, e) in row.0.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            out.0[k] = ring.add(&out.0[k], &ring.mul(aj, e));
        }
    }
    Ok(out)
}

/// Matrix product with skew entry products; not commutative.
pub fn mat_mul(ring: &SkewRing, a: &SkewMat, b: &SkewMat) -> Result<SkewMat> {
    if a.n_cols() != b.n_rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.n_rows(),
            a.n_cols(),
            b.n_rows(),
            b.n_cols()
        )));
    }
    let rows = a
        .rows()
        .iter()
        .map(|r| vec_mat_mul(ring, r, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(SkewMat { rows })
}

/// Componentwise right remainder `v_j mod_r M_j`.
pub fn vec_mod_r(ring: &SkewRing, v: &SkewVec, m: &SkewVec) -> Result<SkewVec> {
    if v.len() != m.len() {
        return Err(Error::LengthMismatch {
            expected: m.len(),
            found: v.len(),
        });
    }
    v.0.iter()
        .zip(&m.0)
        .enumerate()
        .map(|(j, (p, q))| {
            if q.is_zero() {
                Err(Error::ZeroModulus(j))
            } else {
                ring.right_rem(p, q)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(SkewVec)
}

/// Applies `vec_mod_r` to every row.
pub fn mat_mod_r(ring: &SkewRing, b: &SkewMat, m: &SkewVec) -> Result<SkewMat> {
    let rows = b
        .rows()
        .iter()
        .map(|r| vec_mod_r(ring, r, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(SkewMat { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> SkewRing {
        SkewRing::new(FieldCtx::new(2, 2, Some(&[1, 1, 1])).unwrap())
    }

    fn poly(r: &SkewRing, idx: &[u64]) -> SkewPoly {
        SkewPoly::from_coeffs(idx.iter().map(|&i| r.field().from_index(i)).collect())
    }

    #[test]
    fn wdeg_pivot_examples() {
        let r = f4();
        let v = SkewVec(vec![poly(&r, &[1, 0, 1]), poly(&r, &[0, 2])]);
        assert_eq!(wdeg_pivot(&v, &WeightVec(vec![0, 3])).unwrap(), Some((4, 1)));
        let w = WeightVec(vec![2, 5, 1]);
        assert_eq!(wdeg_pivot(&SkewVec::unit(3, 1), &w).unwrap(), Some((5, 1)));
        assert_eq!(wdeg_pivot(&SkewVec::zero(3), &w).unwrap(), None);
        assert!(matches!(
            wdeg_pivot(&SkewVec::zero(2), &w),
            Err(Error::LengthMismatch { .. })
        ));
        // ties go to the largest index
        let v = SkewVec(vec![poly(&r, &[0, 1]), poly(&r, &[0, 1])]);
        assert_eq!(wdeg_pivot(&v, &WeightVec(vec![0, 0])).unwrap(), Some((1, 1)));
    }

    #[test]
    fn wowpb_examples() {
        let r = f4();
        let w = WeightVec(vec![0, 0]);
        assert!(is_wowpb(&SkewMat::identity(2), &w));
        let b = SkewMat::from_rows(vec![
            SkewVec(vec![poly(&r, &[1, 1]), SkewPoly::zero()]),
            SkewVec(vec![poly(&r, &[2]), SkewPoly::one()]),
        ])
        .unwrap();
        assert!(is_wowpb(&b, &w));
        let swapped = SkewMat::from_rows(vec![SkewVec::unit(2, 1), SkewVec::unit(2, 0)]).unwrap();
        assert!(!is_wowpb(&swapped, &w));
        let zero_row = SkewMat::from_rows(vec![SkewVec::unit(2, 0), SkewVec::zero(2)]).unwrap();
        assert!(!is_wowpb(&zero_row, &w));
    }

    #[test]
    fn mat_mul_examples() {
        let r = f4();
        let x = SkewMat::from_rows(vec![SkewVec(vec![SkewPoly::x()])]).unwrap();
        let a = SkewMat::from_rows(vec![SkewVec(vec![poly(&r, &[2])])]).unwrap();
        let prod = mat_mul(&r, &x, &a).unwrap();
        assert_eq!(prod.entry(0, 0), &poly(&r, &[0, 3]));
        let id = SkewMat::identity(1);
        assert_eq!(mat_mul(&r, &prod, &id).unwrap(), prod);
        assert!(matches!(
            mat_mul(&r, &SkewMat::identity(2), &id),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(SkewMat::from_rows(vec![SkewVec::zero(2), SkewVec::zero(3)]).is_err());
    }

    #[test]
    fn vec_mod_r_examples() {
        let r = f4();
        let v = SkewVec(vec![poly(&r, &[1, 0, 1]), poly(&r, &[0, 1])]);
        let m = SkewVec(vec![poly(&r, &[1, 1]), poly(&r, &[2, 1])]);
        assert_eq!(vec_mod_r(&r, &v, &m).unwrap(), SkewVec(vec![SkewPoly::zero(), poly(&r, &[2])]));
        let ones = SkewVec(vec![SkewPoly::one(), SkewPoly::one()]);
        assert_eq!(vec_mod_r(&r, &v, &ones).unwrap(), SkewVec::zero(2));
        let small = SkewVec(vec![poly(&r, &[2]), poly(&r, &[2])]);
        let m2 = SkewVec(vec![poly(&r, &[1, 1]), poly(&r, &[1, 1])]);
        assert_eq!(vec_mod_r(&r, &small, &m2).unwrap(), small);
        let bad = SkewVec(vec![SkewPoly::one(), SkewPoly::zero()]);
        assert!(matches!(vec_mod_r(&r, &v, &bad), Err(Error::ZeroModulus(1))));
    }

    fn random_mat<R: Rng>(ring: &SkewRing, rng: &mut R, n: usize, deg: usize) -> SkewMat {
        let rows = (0..n)
            .map(|_| {
                SkewVec(
                    (0..n)
                        .map(|_| SkewPoly::from_coeffs((0..=deg).map(|_| ring.field().random(rng)).collect()))
                        .collect(),
                )
            })
            .collect();
        SkewMat::from_rows(rows).unwrap()
    }

    #[test]
    fn mat_mul_laws_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = FieldCtx::new(3, 3, None).unwrap();
        let g = f.gen();
        for ring in [SkewRing::new(f.clone()), SkewRing::new(f.with_derivation(g))] {
            for _ in 0..10 {
                let a = random_mat(&ring, &mut rng, 2, 3);
                let b = random_mat(&ring, &mut rng, 2, 3);
                let c = random_mat(&ring, &mut rng, 2, 3);
                let ab_c = mat_mul(&ring, &mat_mul(&ring, &a, &b).unwrap(), &c).unwrap();
                let a_bc = mat_mul(&ring, &a, &mat_mul(&ring, &b, &c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                let sum_rows: Vec<SkewVec> = b.rows().iter().zip(c.rows()).map(|(x, y)| vec_add(&ring, x, y)).collect();
                let bc = SkewMat::from_rows(sum_rows).unwrap();
                let lhs = mat_mul(&ring, &a, &bc).unwrap();
                let ab = mat_mul(&ring, &a, &b).unwrap();
                let ac = mat_mul(&ring, &a, &c).unwrap();
                let rhs: Vec<SkewVec> = ab.rows().iter().zip(ac.rows()).map(|(x, y)| vec_add(&ring, x, y)).collect();
                assert_eq!(lhs, SkewMat::from_rows(rhs).unwrap());
            }
        }
    }

    #[test]
    fn reduced_vectors_have_bounded_weighted_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ring = f4();
        for _ in 0..50 {
            let m = random_mat(&ring, &mut rng, 3, 4);
            let v = random_mat(&ring, &mut rng, 3, 9);
            let modulus = SkewVec(m.row(0).0.iter().map(|p| if p.is_zero() { SkewPoly::one() } else { p.clone() }).collect());
            let red = vec_mod_r(&ring, v.row(0), &modulus).unwrap();
            for (rj, mj) in red.0.iter().zip(&modulus.0) {
                assert!(rj.degree() < mj.degree() || rj.is_zero());
            }
        }
    }
}
