//! Divide-and-conquer skew KNH interpolation on degree-reduced matrices.

use serde::{Deserialize, Serialize};

use crate::counter::{self, OpCounts};
use crate::error::{Error, Result};
use crate::field::Fe;
use crate::functionals::{FunctionalSet, MinPolyTree, TreeMethod};
use crate::knh;
use crate::module::{
    is_wowpb, mat_mod_r, mat_mul, vec_mul_linear, vec_scale, vec_sub, wdeg_pivot, SkewMat, SkewVec,
    WeightVec,
};
use crate::skew::{SkewPoly, SkewRing};

/// Tracked weighted row degrees of the unreduced basis.
pub type DegreeTracker = Vec<usize>;

/// Identity except for column `pivot`, which holds `−Δ_j/Δ_{pivot}` off the
/// diagonal and `x − E(x·b_pivot)/Δ_pivot` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateMatrix {
    pub pivot: usize,
    /// `Δ_j/Δ_pivot` for `j ≠ pivot`, and `E(x·b_pivot)/Δ_pivot` at `pivot`.
    pub ratios: Vec<Fe>,
}

impl UpdateMatrix {
    pub fn width(&self) -> usize {
        self.ratios.len()
    }

    /// Dense form.
    pub fn to_mat(&self, ring: &SkewRing) -> SkewMat {
        let fd = ring.field();
        let mut m = SkewMat::identity(self.width());
        for (j, &r) in self.ratios.iter().enumerate() {
            let e = if j == self.pivot {
                SkewPoly::linear(fd, r)
            } else {
                SkewPoly::constant(fd.neg(r))
            };
            m.row_mut(j).0[self.pivot] = e;
        }
        m
    }

    /// `U·X` by row operations.
    pub fn apply(&self, ring: &SkewRing, x: &SkewMat) -> SkewMat {
        let star = x.row(self.pivot);
        let rows = x
            .rows()
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let r = self.ratios[j];
                if j == self.pivot {
                    vec_mul_linear(ring, r, star)
                } else if r.is_zero() {
                    row.clone()
                } else {
                    vec_sub(ring, row, &vec_scale(ring, r, star))
                }
            })
            .collect();
        SkewMat::from_rows(rows).expect("square")
    }
}

/// One interpolation step on a reduced basis. Returns `None` when every row
/// already lies in the kernel of `E_i`; the pivot is chosen by the tracked
/// degrees, smallest index on ties.
pub fn interpolate_point(
    fs: &FunctionalSet,
    i: usize,
    b: &SkewMat,
    d: &[usize],
) -> Result<(Option<UpdateMatrix>, DegreeTracker)> {
    let fd = fs.ring().field();
    let deltas = b.rows().iter().map(|r| fs.eval(i, r)).collect::<Result<Vec<_>>>()?;
    let mut dh = d.to_vec();
    let mut best: Option<usize> = None;
    for (j, delta) in deltas.iter().enumerate() {
        if !delta.is_zero() && best.is_none_or(|bj| d[j] < d[bj]) {
            best = Some(j);
        }
    }
    let Some(js) = best else {
        return Ok((None, dh));
    };
    if deltas[js].is_zero() {
        return Err(Error::InternalInvariant("selected a zero discrepancy".into()));
    }
    let inv = fd.inv(deltas[js])?;
    let shift = fs.eval_x_shift(i, b.row(js))?;
    let ratios = deltas
        .iter()
        .enumerate()
        .map(|(j, &dj)| {
            if j == js {
                fd.mul(shift, inv)
            } else if dj.is_zero() {
                Fe::ZERO
            } else {
                fd.mul(dj, inv)
            }
        })
        .collect();
    dh[js] += 1;
    Ok((Some(UpdateMatrix { pivot: js, ratios }), dh))
}

/// Which interpolation routine to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Baseline,
    #[default]
    Fast,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "baseline" => Ok(Algorithm::Baseline),
            "fast" => Ok(Algorithm::Fast),
            _ => Err(Error::InvalidInstance(format!("unknown algorithm {s:?}"))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Baseline => "baseline",
            Algorithm::Fast => "fast",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Check weak Popov form, kernel membership and degrees of the result.
    pub verify: bool,
    /// Ranges with `i2 − i1 < leaf_threshold` are processed sequentially.
    pub leaf_threshold: usize,
    pub tree_method: TreeMethod,
    /// Keep every update matrix, in application order.
    pub record_factors: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            verify: false,
            leaf_threshold: 16,
            tree_method: TreeMethod::Subproduct,
            record_factors: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub ops: OpCounts,
    /// Number of degree-increasing updates.
    pub updates: usize,
    pub tree_nodes: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub basis: SkewMat,
    pub degrees: DegreeTracker,
    pub stats: SolveStats,
    pub factors: Option<Vec<UpdateMatrix>>,
}

struct Ctx<'a> {
    fs: &'a FunctionalSet,
    tree: &'a MinPolyTree,
    leaf: usize,
    factors: Option<Vec<UpdateMatrix>>,
    updates: usize,
}

/// Transformation `T` such that `T·B` is a weak Popov basis of
/// `⟨B⟩ ∩ K_{i1} ∩ … ∩ K_{i2}`, with the tracked degrees of its rows.
///
/// `b` must be reduced modulo `M_[i1,i2]`; this is checked.
pub fn interpolate_tree(
    fs: &FunctionalSet,
    tree: &MinPolyTree,
    i1: usize,
    i2: usize,
    b: &SkewMat,
    d: &[usize],
    leaf_threshold: usize,
) -> Result<(SkewMat, DegreeTracker)> {
    let mut ctx = Ctx {
        fs,
        tree,
        leaf: leaf_threshold,
        factors: None,
        updates: 0,
    };
    ctx.tree_step(i1, i2, b, d)
}

impl Ctx<'_> {
    fn record(&mut self, u: &UpdateMatrix) {
        self.updates += 1;
        if let Some(f) = self.factors.as_mut() {
            f.push(u.clone());
        }
    }

    fn check_reduced(&self, b: &SkewMat, m: &SkewVec, i1: usize, i2: usize) -> Result<()> {
        for row in b.rows() {
            for (e, mk) in row.0.iter().zip(&m.0) {
                if e.degree().is_some() && e.degree() >= mk.degree() {
                    return Err(Error::InternalInvariant(format!(
                        "matrix entering [{i1},{i2}] not reduced by its minimal vector"
                    )));
                }
            }
        }
        Ok(())
    }

    fn tree_step(&mut self, i1: usize, i2: usize, b: &SkewMat, d: &[usize]) -> Result<(SkewMat, DegreeTracker)> {
        let ring = self.fs.ring();
        let m = self.tree.get(i1, i2)?;
        self.check_reduced(b, m, i1, i2)?;
        let width = self.fs.width();
        if i1 == i2 {
            let (u, dh) = interpolate_point(self.fs, i1, b, d)?;
            return Ok(match u {
                Some(u) => {
                    self.record(&u);
                    (u.to_mat(ring), dh)
                }
                None => (SkewMat::identity(width), dh),
            });
        }
        if i2 - i1 < self.leaf {
            let mut t = SkewMat::identity(width);
            let mut cur = b.clone();
            let mut dc = d.to_vec();
            for i in i1..=i2 {
                let (u, dh) = interpolate_point(self.fs, i, &cur, &dc)?;
                dc = dh;
                if let Some(u) = u {
                    self.record(&u);
                    t = u.apply(ring, &t);
                    cur = mat_mod_r(ring, &u.apply(ring, &cur), m)?;
                }
            }
            return Ok((t, dc));
        }
        let z = (i1 + i2) / 2;
        let ml = self.tree.get(i1, z)?;
        let mr = self.tree.get(z + 1, i2)?;
        let b1 = mat_mod_r(ring, b, ml)?;
        let (t1, d1) = self.tree_step(i1, z, &b1, d)?;
        // (T1·B) mod M_R = (T1·(B mod M_R)) mod M_R since M_R generates a
        // left ideal in every coordinate
        let br = mat_mod_r(ring, b, mr)?;
        let b2 = mat_mod_r(ring, &mat_mul(ring, &t1, &br)?, mr)?;
        let (t2, d2) = self.tree_step(z + 1, i2, &b2, &d1)?;
        Ok((mat_mul(ring, &t2, &t1)?, d2))
    }
}

/// Solves the interpolation problem with the chosen algorithm. Operation
/// counts cover the whole computation except the optional verification.
pub fn solve(fs: &FunctionalSet, w: &WeightVec, algorithm: Algorithm, opts: &SolveOptions) -> Result<Solution> {
    let (res, ops) = counter::measure(|| -> Result<Solution> {
        match algorithm {
            Algorithm::Baseline => {
                let out = knh::knh_interpolate_traced(fs, w)?;
                let updates = out.steps.iter().filter(|s| s.pivot.is_some()).count();
                Ok(Solution {
                    basis: out.basis,
                    degrees: out.degrees,
                    stats: SolveStats {
                        updates,
                        ..Default::default()
                    },
                    factors: None,
                })
            }
            Algorithm::Fast => solve_fast(fs, w, opts),
        }
    });
    let mut sol = res?;
    sol.stats.ops = ops;
    if opts.verify {
        verify(fs, w, &sol)?;
    }
    Ok(sol)
}

/// The divide-and-conquer solver.
pub fn solve_interpolation(fs: &FunctionalSet, w: &WeightVec, opts: &SolveOptions) -> Result<Solution> {
    solve(fs, w, Algorithm::Fast, opts)
}

fn solve_fast(fs: &FunctionalSet, w: &WeightVec, opts: &SolveOptions) -> Result<Solution> {
    let width = fs.width();
    if w.len() != width {
        return Err(Error::LengthMismatch {
            expected: width,
            found: w.len(),
        });
    }
    let n = fs.len();
    if n == 0 {
        return Ok(Solution {
            basis: SkewMat::identity(width),
            degrees: w.0.clone(),
            stats: SolveStats::default(),
            factors: opts.record_factors.then(Vec::new),
        });
    }
    let ring = fs.ring();
    let tree = MinPolyTree::build(fs, opts.tree_method)?;
    let root = tree.get(0, n - 1)?;
    let b0 = mat_mod_r(ring, &SkewMat::identity(width), root)?;
    let mut ctx = Ctx {
        fs,
        tree: &tree,
        leaf: opts.leaf_threshold,
        factors: opts.record_factors.then(Vec::new),
        updates: 0,
    };
    let (t, d) = ctx.tree_step(0, n - 1, &b0, &w.0)?;
    Ok(Solution {
        basis: t,
        degrees: d,
        stats: SolveStats {
            ops: OpCounts::default(),
            updates: ctx.updates,
            tree_nodes: tree.len(),
        },
        factors: ctx.factors,
    })
}

/// Checks weak Popov form, kernel membership, the degree vector and, when
/// recorded, that the factors multiply to the basis.
pub fn verify(fs: &FunctionalSet, w: &WeightVec, sol: &Solution) -> Result<()> {
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    if !is_wowpb(&sol.basis, w) {
        return fail("basis is not in w-ordered weak Popov form".into());
    }
    for (j, row) in sol.basis.rows().iter().enumerate() {
        for i in 0..fs.len() {
            if !fs.eval(i, row)?.is_zero() {
                return fail(format!("row {j} is not in the kernel of functional {i}"));
            }
        }
        let dj = wdeg_pivot(row, w)?.map(|(d, _)| d);
        if dj != Some(sol.degrees[j]) {
            return fail(format!("tracked degree of row {j} is wrong"));
        }
    }
    if let Some(factors) = &sol.factors {
        let ring = fs.ring();
        let mut prod = SkewMat::identity(fs.width());
        for u in factors {
            prod = u.apply(ring, &prod);
        }
        if prod != sol.basis {
            return fail("recorded factors do not multiply to the basis".into());
        }
    }
    Ok(())
}

/// Reduces a vector against a weak Popov basis by repeatedly cancelling its
/// leading term with the row sharing its pivot. Returns the remainder.
pub fn reduce_against(ring: &SkewRing, basis: &SkewMat, w: &WeightVec, v: &SkewVec) -> Result<SkewVec> {
    let fd = ring.field();
    let mut v = v.clone();
    let pivots = basis
        .rows()
        .iter()
        .map(|r| wdeg_pivot(r, w))
        .collect::<Result<Vec<_>>>()?;
    while let Some((dv, pv)) = wdeg_pivot(&v, w)? {
        let Some((r, (dr, _))) = pivots
            .iter()
            .enumerate()
            .find_map(|(r, p)| p.filter(|&(_, pr)| pr == pv).map(|p| (r, p)))
        else {
            break;
        };
        if dr > dv {
            break;
        }
        let shift = dv - dr;
        let lv = v.0[pv].lead().unwrap();
        let lr = basis.entry(r, pv).lead().unwrap();
        // c·x^shift·row has leading coefficient c·σ^shift(lr)
        let c = fd.div(lv, fd.sigma_pow(lr, shift as i64))?;
        let mono = SkewPoly::monomial(c, shift);
        let sub = SkewVec(basis.row(r).0.iter().map(|e| ring.mul(&mono, e)).collect());
        v = vec_sub(ring, &v, &sub);
    }
    Ok(v)
}
