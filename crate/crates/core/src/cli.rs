//! Command-line front end. Exit codes: 0 ok, 1 usage, 2 bad input,
//! 3 internal invariant violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bench::{self, BenchConfig, Grid};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::functionals::TreeMethod;
use crate::instance::{poly_to_json, BasisFile, InstanceFile};
use crate::knh_fast::{solve, Algorithm, SolveOptions};
use crate::rank_codes::{random_rank_error, rank_over_base, DecodeOutcome, GabidulinCode};
use crate::skew::SkewRing;

// must agree with skew::DEFAULT_KARATSUBA_THRESHOLD
const KARATSUBA_DEFAULT: &str = "32";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "skew-knh", version, about = "Interpolation over free modules of skew polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Karatsuba threshold: `off` or a degree.
#[derive(Clone, Copy, Debug)]
struct Karatsuba(Option<usize>);

fn parse_karatsuba(s: &str) -> std::result::Result<Karatsuba, String> {
    match s {
        "off" => Ok(Karatsuba(None)),
        _ => s.parse::<usize>().map(|t| Karatsuba(Some(t))).map_err(|e| e.to_string()),
    }
}

fn parse_tree(s: &str) -> std::result::Result<TreeMethod, String> {
    match s {
        "euclid" => Ok(TreeMethod::Euclid),
        "subproduct" => Ok(TreeMethod::Subproduct),
        _ => Err(format!("unknown tree method {s:?}")),
    }
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_code(s: &str) -> std::result::Result<[usize; 4], String> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<_, _>>()?;
    v.try_into().map_err(|_| "expected n,k,p,m".to_string())
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Solve the interpolation problem of a JSON instance.
    Interpolate {
        instance: PathBuf,
        #[arg(long, default_value = "fast")]
        algorithm: Algorithm,
        /// Check the result (weak Popov form, kernel, degrees).
        #[arg(long)]
        verify: bool,
        /// Include operation counts in the output.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = SolveOptions::default().leaf_threshold)]
        leaf_threshold: usize,
        #[arg(long, default_value = "subproduct", value_parser = parse_tree)]
        tree_method: TreeMethod,
        #[arg(long, default_value = KARATSUBA_DEFAULT, value_parser = parse_karatsuba)]
        karatsuba: Karatsuba,
    },
    /// Count field operations of both solvers on random instances.
    Bench {
        /// e.g. `s=2;n=128,256,512;p=65521;m=2;family=operator`
        #[arg(long, value_parser = parse_grid)]
        grid: Grid,
        /// Seeds 0..k per grid point.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, value_delimiter = ',', default_value = "baseline,fast")]
        algorithms: Vec<Algorithm>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value = KARATSUBA_DEFAULT, value_parser = parse_karatsuba)]
        karatsuba: Karatsuba,
        #[arg(long, default_value_t = SolveOptions::default().leaf_threshold)]
        leaf_threshold: usize,
        /// Record wall-clock times (makes the output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Encode, corrupt and decode one Gabidulin codeword.
    Decode {
        /// n,k,p,m
        #[arg(long, value_parser = parse_code)]
        code: [usize; 4],
        #[arg(long, default_value_t = 0)]
        errors: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "fast")]
        algorithm: Algorithm,
    },
    /// Run the built-in invariant checks.
    Selftest {
        /// Corrupt field multiplication first; the run must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn interpolate(
    path: &PathBuf,
    algorithm: Algorithm,
    opts: SolveOptions,
    stats: bool,
    karatsuba: Option<usize>,
    out: &Option<PathBuf>,
) -> Result<()> {
    let text = fs::read_to_string(path)?;
    let mut inst = InstanceFile::parse(&text)?.to_instance()?;
    let ring = inst.fs.ring().clone().with_karatsuba(karatsuba);
    inst.fs = crate::functionals::FunctionalSet::new(ring, inst.fs.family(), inst.fs.width(), inst.fs.points().to_vec())?;
    let sol = solve(&inst.fs, &inst.weights, algorithm, &opts)?;
    emit(out, &BasisFile::from_solution(inst.fs.ring().field(), &sol, stats).to_json())
}

fn decode(code: [usize; 4], t: usize, seed: u64, algorithm: Algorithm) -> Result<String> {
    let [n, k, p, m] = code;
    let field = FieldCtx::new(p as u64, m, None)?;
    let code = GabidulinCode::standard(SkewRing::new(field.clone()), n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = code.random_message(&mut rng);
    let e = random_rank_error(&field, n, t, &mut rng)?;
    let c = code.encode(&f)?;
    let r: Vec<Fe> = c.iter().zip(&e).map(|(&a, &b)| field.add(a, b)).collect();
    let outcome = code.decode(&r, algorithm)?;
    let json = |g| serde_json::to_string(&poly_to_json(&field, g)).expect("serializable");
    let mut s = format!("code: n={n} k={k} p={p} m={m} radius={}\n", code.radius());
    s += &format!("transmitted: {}\n", json(&f));
    s += &format!("error rank: {}\n", rank_over_base(&field, &e));
    let success = match &outcome {
        DecodeOutcome::Decoded(g) => {
            s += &format!("decoded: {}\n", json(g));
            *g == f
        }
        DecodeOutcome::Failure => {
            s += "decoded: DecodingFailure\n";
            false
        }
    };
    s += &format!("success: {success}\n");
    Ok(s)
}

fn exit_for(e: &Error) -> i32 {
    eprintln!("error: {e}");
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_INPUT
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let res = match cli.cmd {
        Cmd::Interpolate { instance, algorithm, verify, stats, out, leaf_threshold, tree_method, karatsuba } => {
            let opts = SolveOptions { verify, leaf_threshold, tree_method, ..SolveOptions::default() };
            interpolate(&instance, algorithm, opts, stats, karatsuba.0, &out)
        }
        Cmd::Bench { grid, seeds, algorithms, csv, karatsuba, leaf_threshold, timing } => {
            let cfg = BenchConfig { grid, seeds: (0..seeds).collect(), algorithms, karatsuba: karatsuba.0, leaf_threshold, timing };
            bench::run(&cfg).and_then(|recs| {
                let mut buf = Vec::new();
                bench::write_csv(&recs, &mut buf)?;
                emit(&csv, &String::from_utf8_lossy(&buf))
            })
        }
        Cmd::Decode { code, errors, seed, algorithm } => {
            decode(code, errors, seed, algorithm).and_then(|s| emit(&None, &s))
        }
        Cmd::Selftest { inject_fault } => {
            let report = crate::selftest::run(inject_fault);
            print!("{}", report.render());
            return if report.passed() { EXIT_OK } else { EXIT_INTERNAL };
        }
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => exit_for(&e),
    }
}
