use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("degree {degree} is below the minimum {min} required here")]
    DegreeTooSmall { degree: u32, min: u32 },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("point lies outside the domain")]
    OutsideDomain,
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("scale vector has a zero entry at index {0}")]
    ZeroScale(usize),
    #[error("{what} exceeds the verification scale limit {limit}")]
    ScaleExceeded { what: String, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
