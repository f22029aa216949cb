use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree too low for this operation")]
    DegreeTooLow,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("unknown claim id {0}")]
    UnknownClaim(String),
}
