use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("no factorization: {0}")]
    NoFactorization(String),

    #[error("comparison map is not an isomorphism: {0}")]
    ComparisonNotIso(String),

    #[error("multiplication is not associative: {0}")]
    NotAssociative(String),

    #[error("Smith ideal does not have unit cokernel: {0}")]
    NotUnitCokernel(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}

pub(crate) fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}
