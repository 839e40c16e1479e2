//! Iterative skew KNH interpolation: one functional at a time, on the full
//! basis rows.

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::functionals::FunctionalSet;
use crate::module::{vec_mul_linear, vec_mul_x, vec_scale, vec_sub, wdeg_pivot, SkewMat, WeightVec};

/// What happened while processing one functional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnhStep {
    pub index: usize,
    /// Row that received the degree-increasing update; `None` when every
    /// row was already in the kernel.
    pub pivot: Option<usize>,
    pub deltas: Vec<Fe>,
    /// `E_i(x·b*)`, zero when no update happened.
    pub shift: Fe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnhOutput {
    pub basis: SkewMat,
    pub degrees: Vec<usize>,
    pub steps: Vec<KnhStep>,
}

/// Basis of the module of vectors annihilated by all functionals, in
/// w-ordered weak Popov form, together with the row weighted degrees.
pub fn knh_interpolate(fs: &FunctionalSet, w: &WeightVec) -> Result<(SkewMat, Vec<usize>)> {
    let out = knh_interpolate_traced(fs, w)?;
    Ok((out.basis, out.degrees))
}

/// Same as [`knh_interpolate`], also returning the per-functional log.
pub fn knh_interpolate_traced(fs: &FunctionalSet, w: &WeightVec) -> Result<KnhOutput> {
    let width = fs.width();
    if w.len() != width {
        return Err(Error::LengthMismatch {
            expected: width,
            found: w.len(),
        });
    }
    let ring = fs.ring();
    let fd = ring.field();
    let mut b = SkewMat::identity(width);
    let mut steps = Vec::with_capacity(fs.len());
    for i in 0..fs.len() {
        let deltas = b.rows().iter().map(|r| fs.eval(i, r)).collect::<Result<Vec<_>>>()?;
        let mut best: Option<(usize, usize)> = None;
        for (j, delta) in deltas.iter().enumerate() {
            if delta.is_zero() {
                continue;
            }
            let (dj, _) = wdeg_pivot(b.row(j), w)?
                .ok_or_else(|| Error::InternalInvariant(format!("row {j} vanished")))?;
            if best.is_none_or(|(bd, _)| dj < bd) {
                best = Some((dj, j));
            }
        }
        let Some((_, js)) = best else {
            steps.push(KnhStep {
                index: i,
                pivot: None,
                deltas,
                shift: Fe::ZERO,
            });
            continue;
        };
        let star = b.row(js).clone();
        let inv = fd.inv(deltas[js])?;
        let shift = fs.eval(i, &vec_mul_x(ring, &star))?;
        for (j, delta) in deltas.iter().enumerate() {
            if delta.is_zero() {
                continue;
            }
            let new_row = if j == js {
                vec_mul_linear(ring, fd.mul(shift, inv), &star)
            } else {
                vec_sub(ring, b.row(j), &vec_scale(ring, fd.mul(*delta, inv), &star))
            };
            *b.row_mut(j) = new_row;
        }
        steps.push(KnhStep {
            index: i,
            pivot: Some(js),
            deltas,
            shift,
        });
    }
    let degrees = b
        .rows()
        .iter()
        .map(|r| {
            wdeg_pivot(r, w)?
                .map(|(d, _)| d)
                .ok_or_else(|| Error::InternalInvariant("zero row in basis".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KnhOutput { basis: b, degrees, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::functionals::FunctionalPoint;
    use crate::module::{is_wowpb, SkewVec};
    use crate::skew::{EvalFamily, SkewPoly, SkewRing};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> SkewRing {
        SkewRing::new(FieldCtx::new(2, 2, Some(&[1, 1, 1])).unwrap())
    }

    #[test]
    fn worked_trace() {
        let r = f4();
        let a = r.field().gen();
        let fs = FunctionalSet::new(
            r.clone(),
            EvalFamily::Operator,
            2,
            vec![FunctionalPoint { b: Fe::ONE, u: vec![Fe::ONE, a] }],
        )
        .unwrap();
        let out = knh_interpolate_traced(&fs, &WeightVec(vec![0, 0])).unwrap();
        let x1 = SkewPoly::from_coeffs(vec![Fe::ONE, Fe::ONE]);
        let expected = SkewMat::from_rows(vec![
            SkewVec(vec![x1, SkewPoly::zero()]),
            SkewVec(vec![SkewPoly::constant(a), SkewPoly::one()]),
        ])
        .unwrap();
        assert_eq!(out.basis, expected);
        assert_eq!(out.degrees, vec![1, 0]);
        assert_eq!(out.steps[0].pivot, Some(0));
        assert_eq!(out.steps[0].deltas, vec![Fe::ONE, a]);
        assert_eq!(out.steps[0].shift, Fe::ONE);
    }

    #[test]
    fn degenerate_inputs() {
        let r = f4();
        let w = WeightVec(vec![2, 1]);
        let empty = FunctionalSet::new(r.clone(), EvalFamily::Operator, 2, vec![]).unwrap();
        assert_eq!(knh_interpolate(&empty, &w).unwrap(), (SkewMat::identity(2), vec![2, 1]));
        let zeros = FunctionalSet::new(
            r.clone(),
            EvalFamily::Operator,
            2,
            vec![FunctionalPoint { b: Fe::ONE, u: vec![Fe::ZERO, Fe::ZERO] }; 3],
        )
        .unwrap();
        assert_eq!(knh_interpolate(&zeros, &w).unwrap(), (SkewMat::identity(2), vec![2, 1]));
        assert!(matches!(
            knh_interpolate(&zeros, &WeightVec(vec![0])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn random_outputs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, m) in [(2u64, 3usize), (3, 2), (5, 1)] {
            let f = FieldCtx::new(p, m, None).unwrap();
            let g = f.gen();
            for ring in [SkewRing::new(f.clone()), SkewRing::new(f.with_derivation(g))] {
                for family in [EvalFamily::Operator, EvalFamily::Remainder] {
                    let width = rng.gen_range(1..4);
                    let n = rng.gen_range(0..12);
                    let fd = ring.field();
                    let points = (0..n)
                        .map(|_| FunctionalPoint {
                            b: fd.random(&mut rng),
                            u: (0..width).map(|_| fd.random(&mut rng)).collect(),
                        })
                        .collect();
                    let fs = FunctionalSet::new(ring.clone(), family, width, points).unwrap();
                    let w = WeightVec((0..width).map(|_| rng.gen_range(0..=n)).collect());
                    let out = knh_interpolate_traced(&fs, &w).unwrap();
                    assert!(is_wowpb(&out.basis, &w));
                    for row in out.basis.rows() {
                        for i in 0..n {
                            assert_eq!(fs.eval(i, row).unwrap(), Fe::ZERO);
                        }
                    }
                    let updates = out.steps.iter().filter(|s| s.pivot.is_some()).count();
                    let total: usize = out.degrees.iter().sum::<usize>() - w.0.iter().sum::<usize>();
                    assert_eq!(total, updates);
                }
            }
        }
    }
}
