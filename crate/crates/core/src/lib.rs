pub mod bench;
pub mod cli;
pub mod counter;
pub mod error;
pub mod field;
pub mod functionals;
pub mod instance;
pub mod knh;
pub mod knh_fast;
mod fp_poly;
pub mod module;
pub mod rank_codes;
pub mod selftest;
pub mod skew;

pub use error::{Error, Result};
pub use field::{Fe, FieldCtx, FieldSpec};
pub use skew::{EvalFamily, SkewPoly, SkewRing};
pub use module::{SkewMat, SkewVec, WeightVec};
pub use functionals::{FunctionalPoint, FunctionalSet, MinPolyTree, TreeMethod};
pub use knh_fast::{solve, solve_interpolation, Algorithm, Solution, SolveOptions, SolveStats};
