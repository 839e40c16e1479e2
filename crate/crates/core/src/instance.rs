//! JSON formats for interpolation problems and their solutions.
//!
//! Elements are arrays of base-p digits (ascending), polynomials are arrays
//! of elements (ascending degree), matrices are arrays of rows of
//! polynomials.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx, FieldSpec};
use crate::functionals::{FunctionalPoint, FunctionalSet};
use crate::knh_fast::{Solution, SolveStats};
use crate::module::{SkewMat, SkewVec, WeightVec};
use crate::skew::{EvalFamily, SkewPoly, SkewRing};

pub type ElemJson = Vec<u64>;
pub type PolyJson = Vec<ElemJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub b: ElemJson,
    pub u: Vec<ElemJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: FieldSpec,
    pub s: usize,
    pub n: usize,
    pub family: EvalFamily,
    pub weights: Vec<usize>,
    pub points: Vec<PointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A parsed problem: functionals and weights over a concrete ring.
#[derive(Clone, Debug)]
pub struct Instance {
    pub fs: FunctionalSet,
    pub weights: WeightVec,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFile {
    pub rows: Vec<Vec<PolyJson>>,
    pub degrees: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<SolveStats>,
}

pub fn elem_to_json(field: &FieldCtx, a: Fe) -> ElemJson {
    field.to_digits(a)
}

pub fn poly_to_json(field: &FieldCtx, f: &SkewPoly) -> PolyJson {
    f.coeffs().iter().map(|&c| field.to_digits(c)).collect()
}

pub fn poly_from_json(field: &FieldCtx, f: &[ElemJson]) -> Result<SkewPoly> {
    Ok(SkewPoly::from_coeffs(f.iter().map(|c| field.from_digits(c)).collect::<Result<_>>()?))
}

pub fn mat_to_json(field: &FieldCtx, m: &SkewMat) -> Vec<Vec<PolyJson>> {
    m.rows().iter().map(|r| r.0.iter().map(|f| poly_to_json(field, f)).collect()).collect()
}

pub fn mat_from_json(field: &FieldCtx, rows: &[Vec<PolyJson>]) -> Result<SkewMat> {
    let rows = rows
        .iter()
        .map(|r| Ok(SkewVec(r.iter().map(|f| poly_from_json(field, f)).collect::<Result<_>>()?)))
        .collect::<Result<_>>()?;
    SkewMat::from_rows(rows)
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes") + "\n"
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let field = FieldCtx::from_spec(&self.field)?;
        let width = self.s + 1;
        if self.points.len() != self.n {
            return Err(Error::InvalidInstance(format!("n = {} but {} points given", self.n, self.points.len())));
        }
        if self.weights.len() != width {
            return Err(Error::InvalidInstance(format!(
                "{} weights given for s = {}",
                self.weights.len(),
                self.s
            )));
        }
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.u.len() != width {
                    return Err(Error::InvalidInstance(format!("point {i} has {} coordinates", p.u.len())));
                }
                Ok(FunctionalPoint {
                    b: field.from_digits(&p.b)?,
                    u: p.u.iter().map(|c| field.from_digits(c)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        let fs = FunctionalSet::new(SkewRing::new(field), self.family, width, points)?;
        Ok(Instance {
            fs,
            weights: WeightVec(self.weights.clone()),
            seed: self.seed,
        })
    }
}

impl Instance {
    /// Random instance: nonzero `b`, uniform `u`.
    pub fn random(
        ring: SkewRing,
        family: EvalFamily,
        s: usize,
        n: usize,
        weights: WeightVec,
        seed: u64,
    ) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fd = ring.field().clone();
        let points = (0..n)
            .map(|_| FunctionalPoint {
                b: fd.random_nonzero(&mut rng),
                u: (0..=s).map(|_| fd.random(&mut rng)).collect(),
            })
            .collect();
        let fs = FunctionalSet::new(ring, family, s + 1, points)?;
        if weights.len() != s + 1 {
            return Err(Error::LengthMismatch { expected: s + 1, found: weights.len() });
        }
        Ok(Instance { fs, weights, seed: Some(seed) })
    }

    pub fn to_file(&self) -> InstanceFile {
        let field = self.fs.ring().field();
        InstanceFile {
            field: field.spec(),
            s: self.fs.width() - 1,
            n: self.fs.len(),
            family: self.fs.family(),
            weights: self.weights.0.clone(),
            points: self
                .fs
                .points()
                .iter()
                .map(|p| PointJson {
                    b: elem_to_json(field, p.b),
                    u: p.u.iter().map(|&c| elem_to_json(field, c)).collect(),
                })
                .collect(),
            seed: self.seed,
        }
    }
}

impl BasisFile {
    pub fn from_solution(field: &FieldCtx, sol: &Solution, with_stats: bool) -> Self {
        BasisFile {
            rows: mat_to_json(field, &sol.basis),
            degrees: sol.degrees.clone(),
            stats: with_stats.then(|| sol.stats.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("basis serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_random_instances() {
        for seed in 0..20u64 {
            let p = [2u64, 3, 5][seed as usize % 3];
            let mut field = FieldCtx::new(p, 1 + seed as usize % 5, None).unwrap();
            if seed % 2 == 1 {
                let g = field.gen();
                field = field.with_derivation(g);
            }
            let family = if seed % 4 < 2 { EvalFamily::Operator } else { EvalFamily::Remainder };
            let s = seed as usize % 3;
            let inst = Instance::random(SkewRing::new(field), family, s, 7, WeightVec(vec![1; s + 1]), seed).unwrap();
            let file = inst.to_file();
            let parsed = InstanceFile::parse(&file.to_json()).unwrap();
            assert_eq!(parsed, file);
            let back = parsed.to_instance().unwrap();
            assert_eq!(back.fs.points(), inst.fs.points());
            assert_eq!(back.fs.ring().field(), inst.fs.ring().field());
            assert_eq!(back.weights, inst.weights);
        }
    }

    #[test]
    fn malformed_instances_are_rejected() {
        let good = r#"{"field":{"p":2,"m":2,"modulus":[1,1,1]},"s":1,"n":1,"family":"operator",
            "weights":[0,0],"points":[{"b":[1],"u":[[1],[0,1]]}]}"#;
        assert!(InstanceFile::parse(good).unwrap().to_instance().is_ok());
        assert!(matches!(InstanceFile::parse(&good[..40]), Err(Error::Json(_))));
        let bad_n = good.replace("\"n\":1", "\"n\":2");
        assert!(matches!(InstanceFile::parse(&bad_n).unwrap().to_instance(), Err(Error::InvalidInstance(_))));
        let bad_digit = good.replace("[0,1]]", "[0,2]]");
        assert!(matches!(InstanceFile::parse(&bad_digit).unwrap().to_instance(), Err(Error::InvalidElement(_))));
        let bad_mod = good.replace("[1,1,1]", "[1,0,1]");
        assert!(InstanceFile::parse(&bad_mod).unwrap().to_instance().is_err());
    }
}
