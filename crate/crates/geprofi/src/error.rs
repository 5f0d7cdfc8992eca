//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("genericity budget exhausted: {0}")]
    Genericity(String),
    #[error("reduction mod {p} failed: {reason}")]
    Reduction { p: u64, reason: String },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
