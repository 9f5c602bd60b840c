use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("map is not a module homomorphism: {0}")]
    NotLinear(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("different rings or sides: {0}")]
    RingMismatch(String),
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("GP mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("missing Gorenstein projective data: {0}")]
    MissingGpData(String),
    #[error("verdict unbounded: {0}")]
    Unbounded(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A proved statement failed to hold on a concrete instance.
    #[error("internal failure: {0}")]
    Failure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
