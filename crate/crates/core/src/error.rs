use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("no leading monomial: polynomial is zero")]
    ZeroPolynomial,

    #[error("n = {n} is unsupported here (requires n >= {min})")]
    Unsupported { n: u64, min: u64 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("degree {degree} holds {count} basis monomials, more than the supported {limit}")]
    CapacityExceeded { degree: u64, count: usize, limit: usize },
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
