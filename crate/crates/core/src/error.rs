use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is out of range (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree {0} is out of range (must be in 1..={max})", max = crate::field::MAX_DEGREE)]
    ExtensionDegree(usize),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("automorphism power {r} out of range for extension degree {m}")]
    AutomorphismPower { r: usize, m: usize },
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcrd/lclm of two zero polynomials")]
    BothZero,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero modulus in component {0}")]
    ZeroModulus(usize),
    #[error("invalid index range [{i}, {j}] for {n} functionals")]
    RangeError { i: usize, j: usize, n: usize },
    #[error("minimal polynomial tree has no node for range [{0}, {1}]")]
    MissingTreeNode(usize, usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("polynomial degree {degree} is not below {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("rank {t} is infeasible for length {n} over an extension of degree {m}")]
    RankInfeasible { t: usize, n: usize, m: usize },
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that indicate a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InternalInvariant(_) | Error::VerificationFailed(_) | Error::MissingTreeNode(..)
        )
    }
}
