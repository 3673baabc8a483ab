use thiserror::Error;

/// Errors raised by the arithmetic kernel and the verifiers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("divisor is not monic")]
    NotMonic,
    #[error("divisor must have degree at least 1")]
    ConstantDivisor,
    #[error("divisor has zero constant term, so q is not a unit modulo it")]
    ZeroConstantTerm,
    #[error(
        "polynomial has negative exponents where an ordinary polynomial is required (offset {0})"
    )]
    NegativeOffset(i64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed serialized value: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
