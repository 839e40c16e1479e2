//! Vector evaluation maps `E_i : F[x;σ,δ]^{s+1} → F`, their minimal
//! polynomial vectors and the divide-and-conquer tree over index ranges.
//!
//! Both families are parametrized by a point `b_i` and multipliers
//! `u_{i,0..s}` per functional:
//!
//! * operator: `E_i(Q) = Σ_j Q_j(u_{i,j})_{b_i}`
//! * remainder: `E_i(Q) = Σ_j Q_j(p_{i,j})·u_{i,j}` with `p_{i,j} = b_i^{u_{i,j}}`
//!
//! A zero multiplier means the coordinate does not take part. The conjugate
//! points make every kernel a left submodule, which the interpolation
//! algorithms rely on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::module::{vec_mul_x, SkewVec, MAX_WIDTH};
use crate::skew::{EvalFamily, SkewPoly, SkewRing};

/// Data of one functional.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalPoint {
    pub b: Fe,
    pub u: Vec<Fe>,
}

/// `n` functionals of one family on vectors of width `s + 1`.
#[derive(Clone, Debug)]
pub struct FunctionalSet {
    ring: SkewRing,
    family: EvalFamily,
    width: usize,
    points: Vec<FunctionalPoint>,
    // remainder family: p_{i,j}, zero where u_{i,j} = 0
    conj: Vec<Vec<Fe>>,
}

impl FunctionalSet {
    pub fn new(ring: SkewRing, family: EvalFamily, width: usize, points: Vec<FunctionalPoint>) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::DimensionMismatch(format!(
                "vector width {width} outside 1..={MAX_WIDTH}"
            )));
        }
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.u.len() != width) {
            return Err(Error::DimensionMismatch(format!(
                "functional {i} has {} values, expected {width}",
                p.u.len()
            )));
        }
        let conj = match family {
            EvalFamily::Operator => Vec::new(),
            EvalFamily::Remainder => points
                .iter()
                .map(|pt| {
                    pt.u.iter()
                        .map(|&u| if u.is_zero() { Ok(Fe::ZERO) } else { ring.conjugate(pt.b, u) })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(FunctionalSet {
            ring,
            family,
            width,
            points,
            conj,
        })
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    pub fn family(&self) -> EvalFamily {
        self.family
    }

    /// Number of functionals.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Vector width `s + 1`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn points(&self) -> &[FunctionalPoint] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &FunctionalPoint {
        &self.points[i]
    }

    /// The remainder evaluation point of coordinate `j` of functional `i`.
    /// For the operator family this is the conjugate `b_i^{u_{i,j}}` as well.
    pub fn remainder_point(&self, i: usize, j: usize) -> Option<Fe> {
        let pt = &self.points[i];
        if pt.u[j].is_zero() {
            return None;
        }
        match self.family {
            EvalFamily::Remainder => Some(self.conj[i][j]),
            EvalFamily::Operator => self.ring.conjugate(pt.b, pt.u[j]).ok(),
        }
    }

    fn check(&self, i: usize, q: &SkewVec) -> Result<()> {
        if q.len() != self.width {
            return Err(Error::DimensionMismatch(format!(
                "vector of width {} for functionals of width {}",
                q.len(),
                self.width
            )));
        }
        if i >= self.len() {
            return Err(Error::RangeError { i, j: i, n: self.len() });
        }
        Ok(())
    }

    /// Per-coordinate summands of `E_i(Q)`.
    pub fn eval_parts(&self, i: usize, q: &SkewVec) -> Result<Vec<Fe>> {
        self.check(i, q)?;
        let fd = self.ring.field();
        let pt = &self.points[i];
        Ok(match self.family {
            EvalFamily::Operator => q
                .0
                .iter()
                .zip(&pt.u)
                .map(|(qj, &u)| if u.is_zero() { Fe::ZERO } else { self.ring.op_eval(qj, u, pt.b) })
                .collect(),
            EvalFamily::Remainder => q
                .0
                .iter()
                .zip(&pt.u)
                .zip(&self.conj[i])
                .map(|((qj, &u), &p)| {
                    if u.is_zero() {
                        Fe::ZERO
                    } else {
                        fd.mul(self.ring.rem_eval(qj, p), u)
                    }
                })
                .collect(),
        })
    }

    /// `E_i(Q)`.
    pub fn eval(&self, i: usize, q: &SkewVec) -> Result<Fe> {
        let fd = self.ring.field();
        Ok(self.eval_parts(i, q)?.into_iter().fold(Fe::ZERO, |a, c| fd.add(a, c)))
    }

    /// `E_i(x·Q)` through the shift identity, without forming `x·Q`.
    ///
    /// Operator family: `E_i(xQ) = D_{b_i}(E_i(Q))`. Remainder family:
    /// `E_i(xQ) = Σ_j D_{p_{i,j}}(c_j)·u_{i,j}` with residues
    /// `c_j = Q_j(p_{i,j})`.
    pub fn eval_x_shift(&self, i: usize, q: &SkewVec) -> Result<Fe> {
        self.check(i, q)?;
        let pt = &self.points[i];
        match self.family {
            EvalFamily::Operator => Ok(self.ring.d_map(self.eval(i, q)?, pt.b)),
            EvalFamily::Remainder => {
                let fd = self.ring.field();
                let mut acc = Fe::ZERO;
                for ((qj, &u), &p) in q.0.iter().zip(&pt.u).zip(&self.conj[i]) {
                    if u.is_zero() {
                        continue;
                    }
                    let c = self.ring.rem_eval(qj, p);
                    acc = fd.add(acc, fd.mul(self.ring.d_map(c, p), u));
                }
                Ok(acc)
            }
        }
    }

    /// `E_i(x·Q)` by multiplying out first; the reference for `eval_x_shift`.
    pub fn eval_x_shift_direct(&self, i: usize, q: &SkewVec) -> Result<Fe> {
        self.check(i, q)?;
        self.eval(i, &vec_mul_x(&self.ring, q))
    }

    /// Annihilator vector of a single functional: `x − p_{i,j}` per
    /// participating coordinate, `1` elsewhere.
    pub fn leaf_vector(&self, i: usize) -> SkewVec {
        let pt = &self.points[i];
        SkewVec(
            pt.u.iter()
                .map(|&u| self.ring.annihilator(EvalFamily::Operator, u, pt.b))
                .collect(),
        )
    }

    /// `M_[i,j]` computed point by point with `min_poly_set`.
    pub fn min_vector_range(&self, i: usize, j: usize) -> Result<SkewVec> {
        if i > j || j >= self.len() {
            return Err(Error::RangeError { i, j, n: self.len() });
        }
        (0..self.width)
            .map(|k| {
                let us: Vec<Fe> = (i..=j).map(|l| self.points[l].u[k]).collect();
                let bs: Vec<Fe> = (i..=j).map(|l| self.points[l].b).collect();
                self.ring.min_poly_set(EvalFamily::Operator, &us, &bs)
            })
            .collect::<Result<Vec<_>>>()
            .map(SkewVec)
    }
}

/// How internal tree nodes are merged.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeMethod {
    /// Componentwise LCLM of the two children by the extended Euclidean
    /// algorithm.
    Euclid,
    /// `M = m'·M_left` where `m'` is the minimal polynomial of the right
    /// points moved through `M_left`; the moved points are found by
    /// reducing `M_left` down the right subtree.
    #[default]
    Subproduct,
}

/// Minimal polynomial vectors `M_[i,j]` for every range produced by midpoint
/// splits `z = ⌊(i+j)/2⌋` of `[0, n−1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinPolyTree {
    n: usize,
    nodes: BTreeMap<(usize, usize), SkewVec>,
}

// point sets this small are handled by direct evaluation
const SMALL: usize = 16;

impl MinPolyTree {
    pub fn build(fs: &FunctionalSet, method: TreeMethod) -> Result<Self> {
        let n = fs.len();
        let width = fs.width();
        let mut nodes = BTreeMap::new();
        if n == 0 {
            return Ok(MinPolyTree { n, nodes });
        }
        let mut per_coord = Vec::with_capacity(width);
        for k in 0..width {
            let pts: Vec<(Fe, Fe)> = fs.points().iter().map(|p| (p.u[k], p.b)).collect();
            let mut map = BTreeMap::new();
            let b = Builder { ring: fs.ring(), method };
            b.node(&pts, 0, n - 1, &mut map)?;
            per_coord.push(map);
        }
        let keys: Vec<(usize, usize)> = per_coord[0].keys().copied().collect();
        for key in keys {
            let v = per_coord.iter_mut().map(|m| m.remove(&key).unwrap()).collect();
            nodes.insert(key, SkewVec(v));
        }
        Ok(MinPolyTree { n, nodes })
    }

    /// Number of functionals covered.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored ranges.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Result<&SkewVec> {
        if i > j || j >= self.n {
            return Err(Error::RangeError { i, j, n: self.n });
        }
        self.nodes.get(&(i, j)).ok_or(Error::MissingTreeNode(i, j))
    }

    pub fn root(&self) -> Option<&SkewVec> {
        self.n.checked_sub(1).and_then(|j| self.nodes.get(&(0, j)))
    }

    pub fn ranges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &SkewVec)> {
        self.nodes.iter()
    }
}

struct Builder<'a> {
    ring: &'a SkewRing,
    method: TreeMethod,
}

type PolyMap = BTreeMap<(usize, usize), SkewPoly>;

impl Builder<'_> {
    /// Builds and stores every node under `[lo, hi]`; `pts` are `(u, b)`.
    fn node(&self, pts: &[(Fe, Fe)], lo: usize, hi: usize, out: &mut PolyMap) -> Result<SkewPoly> {
        let m = if lo == hi {
            let (u, b) = pts[lo];
            self.ring.annihilator(EvalFamily::Operator, u, b)
        } else {
            let z = (lo + hi) / 2;
            let left = self.node(pts, lo, z, out)?;
            let right = self.node(pts, z + 1, hi, out)?;
            match self.method {
                TreeMethod::Euclid => self.ring.lclm(&left, &right)?,
                TreeMethod::Subproduct => {
                    let p = self.ring.right_rem(&left, &right)?;
                    let g = self.image_minpoly(pts, z + 1, hi, &p, out)?;
                    self.ring.mul(&g, &left)
                }
            }
        };
        out.insert((lo, hi), m.clone());
        Ok(m)
    }

    /// Minimal polynomial of the images `P(u_l)_{b_l}`, `l ∈ [lo, hi]`, given
    /// `p = P mod_r M_[lo,hi]`. Splits as `G = G_2·G_1` where `G_1` handles
    /// the left half under `P` and `G_2` the right half under `G_1·P`.
    fn image_minpoly(&self, pts: &[(Fe, Fe)], lo: usize, hi: usize, p: &SkewPoly, tree: &PolyMap) -> Result<SkewPoly> {
        if p.is_zero() {
            return Ok(SkewPoly::one());
        }
        if hi - lo < SMALL {
            let images: Vec<Fe> = pts[lo..=hi]
                .iter()
                .map(|&(u, b)| if u.is_zero() { Fe::ZERO } else { self.ring.op_eval(p, u, b) })
                .collect();
            let bs: Vec<Fe> = pts[lo..=hi].iter().map(|q| q.1).collect();
            return self.ring.min_poly_set(EvalFamily::Operator, &images, &bs);
        }
        let z = (lo + hi) / 2;
        let m1 = tree.get(&(lo, z)).ok_or(Error::MissingTreeNode(lo, z))?;
        let m2 = tree.get(&(z + 1, hi)).ok_or(Error::MissingTreeNode(z + 1, hi))?;
        let p1 = self.ring.right_rem(p, m1)?;
        let g1 = self.image_minpoly(pts, lo, z, &p1, tree)?;
        let p2 = self.ring.right_rem(p, m2)?;
        let q = self.ring.right_rem(&self.ring.mul(&g1, &p2), m2)?;
        let g2 = self.image_minpoly(pts, z + 1, hi, &q, tree)?;
        Ok(self.ring.mul(&g2, &g1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::module::vec_mod_r;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> SkewRing {
        SkewRing::new(FieldCtx::new(2, 2, Some(&[1, 1, 1])).unwrap())
    }

    fn poly(r: &SkewRing, idx: &[u64]) -> SkewPoly {
        SkewPoly::from_coeffs(idx.iter().map(|&i| r.field().from_index(i)).collect())
    }

    fn trace_set(r: &SkewRing) -> FunctionalSet {
        let a = r.field().gen();
        FunctionalSet::new(
            r.clone(),
            EvalFamily::Operator,
            2,
            vec![FunctionalPoint { b: Fe::ONE, u: vec![Fe::ONE, a] }],
        )
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        let r = f4();
        let bad = vec![FunctionalPoint { b: Fe::ONE, u: vec![Fe::ONE] }];
        assert!(matches!(
            FunctionalSet::new(r.clone(), EvalFamily::Operator, 2, bad),
            Err(Error::DimensionMismatch(_))
        ));
        let fs = trace_set(&r);
        assert!(matches!(fs.eval(0, &SkewVec::zero(3)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn evaluation_examples() {
        let r = f4();
        let fs = trace_set(&r);
        let a = r.field().gen();
        assert_eq!(fs.eval(0, &SkewVec::unit(2, 0)).unwrap(), Fe::ONE);
        assert_eq!(fs.eval(0, &SkewVec::zero(2)).unwrap(), Fe::ZERO);
        let q = SkewVec(vec![SkewPoly::constant(a), SkewPoly::one()]);
        assert_eq!(fs.eval(0, &q).unwrap(), Fe::ZERO);
        assert_eq!(fs.eval_x_shift(0, &SkewVec::unit(2, 0)).unwrap(), Fe::ONE);
        assert_eq!(fs.eval_x_shift(0, &SkewVec::zero(2)).unwrap(), Fe::ZERO);
        // E(Q) = α gives E(xQ) = σ(α)
        let q = SkewVec(vec![SkewPoly::constant(a), SkewPoly::zero()]);
        assert_eq!(fs.eval(0, &q).unwrap(), a);
        assert_eq!(fs.eval_x_shift(0, &q).unwrap(), r.field().from_index(3));

        let rem = FunctionalSet::new(
            r.clone(),
            EvalFamily::Remainder,
            1,
            vec![FunctionalPoint { b: Fe::ONE, u: vec![Fe::ONE] }],
        )
        .unwrap();
        let q = SkewVec(vec![poly(&r, &[0, 0, 1])]);
        assert_eq!(rem.eval(0, &q).unwrap(), r.rem_eval(&q.0[0], Fe::ONE));
    }

    #[test]
    fn min_vector_examples() {
        let r = f4();
        let fs = trace_set(&r);
        assert_eq!(
            fs.min_vector_range(0, 0).unwrap(),
            SkewVec(vec![poly(&r, &[1, 1]), poly(&r, &[2, 1])])
        );
        assert!(matches!(fs.min_vector_range(1, 0), Err(Error::RangeError { .. })));
        let a = r.field().gen();
        let rem = FunctionalSet::new(
            r.clone(),
            EvalFamily::Remainder,
            3,
            vec![FunctionalPoint { b: a, u: vec![Fe::ONE, Fe::ZERO, Fe::ZERO] }],
        )
        .unwrap();
        assert_eq!(
            rem.min_vector_range(0, 0).unwrap(),
            SkewVec(vec![poly(&r, &[2, 1]), SkewPoly::one(), SkewPoly::one()])
        );
    }

    #[test]
    fn tree_examples() {
        let r = f4();
        let fs = trace_set(&r);
        let t = MinPolyTree::build(&fs, TreeMethod::Subproduct).unwrap();
        assert_eq!(t.len(), 1);
        let a = r.field().gen();
        let a2 = r.field().from_index(3);
        let fs2 = FunctionalSet::new(
            r.clone(),
            EvalFamily::Operator,
            1,
            vec![FunctionalPoint { b: Fe::ONE, u: vec![a] }, FunctionalPoint { b: Fe::ONE, u: vec![a2] }],
        )
        .unwrap();
        for method in [TreeMethod::Euclid, TreeMethod::Subproduct] {
            let t = MinPolyTree::build(&fs2, method).unwrap();
            assert_eq!(t.root().unwrap(), &SkewVec(vec![poly(&r, &[1, 0, 1])]));
        }
        let fs4 = FunctionalSet::new(
            r.clone(),
            EvalFamily::Operator,
            1,
            (0..4).map(|_| FunctionalPoint { b: Fe::ONE, u: vec![a] }).collect(),
        )
        .unwrap();
        let t = MinPolyTree::build(&fs4, TreeMethod::Subproduct).unwrap();
        let ranges: Vec<_> = t.ranges().collect();
        assert_eq!(ranges, vec![(0, 0), (0, 1), (0, 3), (1, 1), (2, 2), (2, 3), (3, 3)]);
        assert!(matches!(t.get(0, 2), Err(Error::MissingTreeNode(0, 2))));
    }

    pub(crate) fn random_set<R: Rng>(ring: &SkewRing, rng: &mut R, family: EvalFamily, width: usize, n: usize) -> FunctionalSet {
        let fd = ring.field();
        let points = (0..n)
            .map(|_| FunctionalPoint {
                b: fd.random(rng),
                u: (0..width)
                    .map(|_| if rng.gen_bool(0.15) { Fe::ZERO } else { fd.random(rng) })
                    .collect(),
            })
            .collect();
        FunctionalSet::new(ring.clone(), family, width, points).unwrap()
    }

    fn rings() -> Vec<SkewRing> {
        let mut out = Vec::new();
        for (p, m, r) in [(2u64, 3usize, 1usize), (3, 2, 1), (2, 4, 3), (5, 2, 1), (7, 1, 0)] {
            let f = FieldCtx::new(p, m, None).unwrap().with_automorphism(r).unwrap();
            let g = f.gen();
            out.push(SkewRing::new(f.clone()).with_karatsuba(Some(3)));
            out.push(SkewRing::new(f.with_derivation(g)));
        }
        out
    }

    #[test]
    fn shift_identity_and_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for ring in rings() {
            for family in [EvalFamily::Operator, EvalFamily::Remainder] {
                let fs = random_set(&ring, &mut rng, family, 3, 5);
                let fd = ring.field();
                for _ in 0..20 {
                    let i = rng.gen_range(0..5);
                    let q = random_vec(&ring, &mut rng, 3, 6);
                    let q2 = random_vec(&ring, &mut rng, 3, 6);
                    assert_eq!(fs.eval_x_shift(i, &q).unwrap(), fs.eval_x_shift_direct(i, &q).unwrap());
                    let c = fd.random(&mut rng);
                    let comb = SkewVec(
                        q.0.iter()
                            .zip(&q2.0)
                            .map(|(a, b)| ring.add(&ring.scale(c, a), b))
                            .collect(),
                    );
                    let lhs = fs.eval(i, &comb).unwrap();
                    let rhs = fd.add(fd.mul(c, fs.eval(i, &q).unwrap()), fs.eval(i, &q2).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    fn random_vec<R: Rng>(ring: &SkewRing, rng: &mut R, width: usize, deg: usize) -> SkewVec {
        SkewVec(
            (0..width)
                .map(|_| {
                    let d = rng.gen_range(0..=deg);
                    SkewPoly::from_coeffs((0..=d).map(|_| ring.field().random(rng)).collect())
                })
                .collect(),
        )
    }

    #[test]
    fn tree_matches_oracle_and_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for ring in rings() {
            for family in [EvalFamily::Operator, EvalFamily::Remainder] {
                let n = rng.gen_range(1..40);
                let fs = random_set(&ring, &mut rng, family, 2, n);
                let te = MinPolyTree::build(&fs, TreeMethod::Euclid).unwrap();
                let ts = MinPolyTree::build(&fs, TreeMethod::Subproduct).unwrap();
                assert_eq!(te, ts);
                for ((i, j), v) in ts.iter() {
                    assert_eq!(v, &fs.min_vector_range(*i, *j).unwrap());
                    for p in &v.0 {
                        assert!(p.is_monic());
                        assert!(p.degree().unwrap() <= j - i + 1);
                    }
                    let q = random_vec(&ring, &mut rng, 2, 2 * n);
                    let red = vec_mod_r(&ring, &q, v).unwrap();
                    for l in *i..=*j {
                        assert_eq!(fs.eval(l, &q).unwrap(), fs.eval(l, &red).unwrap());
                        assert_eq!(fs.eval_x_shift(l, &q).unwrap(), fs.eval_x_shift(l, &red).unwrap());
                    }
                }
            }
        }
    }
}
