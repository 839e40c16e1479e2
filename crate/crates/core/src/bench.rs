//! Operation-count benchmark over a grid of random instances.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::instance::Instance;
use crate::knh_fast::{solve, Algorithm, SolveOptions};
use crate::module::WeightVec;
use crate::skew::{EvalFamily, SkewRing};

pub const CSV_HEADER: &str = "family,p,m,s,n,algorithm,mult_count,add_count,wall_time_ns,seed";

/// Lists of parameter values; the benchmark runs their cartesian product.
///
/// Text form: `s=2;n=128,256,512;p=65521;m=2;family=operator`. Missing
/// keys take the defaults `s=1`, `n=16`, `p=2`, `m=8`, `family=operator`;
/// an empty string is the empty grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub family: Vec<EvalFamily>,
    pub p: Vec<u64>,
    pub m: Vec<usize>,
    pub s: Vec<usize>,
    pub n: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub family: EvalFamily,
    pub p: u64,
    pub m: usize,
    pub s: usize,
    pub n: usize,
}

impl Grid {
    pub fn empty() -> Self {
        Grid { family: vec![], p: vec![], m: vec![], s: vec![], n: vec![] }
    }

    pub fn points(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &family in &self.family {
            for &p in &self.p {
                for &m in &self.m {
                    for &s in &self.s {
                        for &n in &self.n {
                            out.push(GridPoint { family, p, m, s, n });
                        }
                    }
                }
            }
        }
        out
    }
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::InvalidInstance(format!("bad value {x:?} for {key}"))))
        .collect()
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Grid::empty());
        }
        let mut g = Grid { family: vec![EvalFamily::Operator], p: vec![2], m: vec![8], s: vec![1], n: vec![16] };
        for part in text.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInstance(format!("expected key=values, got {part:?}")))?;
            match k.trim() {
                "s" => g.s = parse_list(k, v)?,
                "n" => g.n = parse_list(k, v)?,
                "p" => g.p = parse_list(k, v)?,
                "m" => g.m = parse_list(k, v)?,
                "family" => {
                    g.family = v
                        .split(',')
                        .map(str::trim)
                        .filter(|x| !x.is_empty())
                        .map(|x| match x {
                            "operator" => Ok(EvalFamily::Operator),
                            "remainder" => Ok(EvalFamily::Remainder),
                            _ => Err(Error::InvalidInstance(format!("unknown family {x:?}"))),
                        })
                        .collect::<Result<_>>()?
                }
                other => return Err(Error::InvalidInstance(format!("unknown grid key {other:?}"))),
            }
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: EvalFamily,
    pub p: u64,
    pub m: usize,
    pub s: usize,
    pub n: usize,
    pub algorithm: Algorithm,
    pub mult_count: u64,
    pub add_count: u64,
    /// Zero unless timing was requested, so that runs are reproducible.
    pub wall_time_ns: u64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub grid: Grid,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    pub karatsuba: Option<usize>,
    pub leaf_threshold: usize,
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            grid: Grid::empty(),
            seeds: vec![0],
            algorithms: vec![Algorithm::Baseline, Algorithm::Fast],
            karatsuba: Some(crate::skew::DEFAULT_KARATSUBA_THRESHOLD),
            leaf_threshold: SolveOptions::default().leaf_threshold,
            timing: false,
        }
    }
}

/// One record per (grid point, seed, algorithm), in that order. Runs are
/// spread over the rayon pool; each measures its own thread's counters.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    let mut jobs = Vec::new();
    for pt in cfg.grid.points() {
        for &seed in &cfg.seeds {
            for &alg in &cfg.algorithms {
                jobs.push((pt, seed, alg));
            }
        }
    }
    let opts = SolveOptions { leaf_threshold: cfg.leaf_threshold, ..SolveOptions::default() };
    jobs.par_iter()
        .map(|&(pt, seed, alg)| {
            let field = FieldCtx::new(pt.p, pt.m, None)?;
            let ring = SkewRing::new(field).with_karatsuba(cfg.karatsuba);
            let inst = Instance::random(ring, pt.family, pt.s, pt.n, WeightVec::zeros(pt.s + 1), seed)?;
            let start = Instant::now();
            let sol = solve(&inst.fs, &inst.weights, alg, &opts)?;
            let ns = start.elapsed().as_nanos() as u64;
            Ok(BenchRecord {
                family: pt.family,
                p: pt.p,
                m: pt.m,
                s: pt.s,
                n: pt.n,
                algorithm: alg,
                mult_count: sol.stats.ops.mul,
                add_count: sol.stats.ops.add,
                wall_time_ns: if cfg.timing { ns } else { 0 },
                seed,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))
        .map_err(|e| Error::Io(e.into()))?;
    for r in records {
        w.serialize(r).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}
