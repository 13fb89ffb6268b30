use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no prime factorization")]
    Zero,
    #[error("value does not fit in 64 bits")]
    Overflow,
    #[error("exponent {0} is too large for value-domain arithmetic")]
    ExponentTooLarge(String),
    #[error("rational exponent {0} is not an integer")]
    NonIntegerExponent(String),
    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
