use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable sets differ: {0:?} vs {1:?}")]
    ArityMismatch(Vec<String>, Vec<String>),
    #[error("point has {got} coordinates, expected {expected}")]
    PointArity { expected: usize, got: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("both inputs are zero")]
    BothZero,
    #[error("declared degree must be at least 1")]
    DegreeZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget of {0:?} exceeded")]
    BudgetExceeded(std::time::Duration),
    #[error("ran out of usable primes")]
    PrimesExhausted,
    #[error("input must have integer coefficients")]
    NotIntegral,
    #[error("transcription mismatch for {0}")]
    Transcription(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
