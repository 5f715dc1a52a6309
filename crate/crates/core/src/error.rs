use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarvestError {
    #[error("argument outside the validated domain: {0}")]
    DomainExceeded(String),
    #[error("result overflows double precision: {0}")]
    Overflow(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),
    #[error("extrapolation diverged: {0}")]
    ExtrapolationDivergence(String),
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("density matrix not positive: {0}")]
    PositivityViolation(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("degenerate variance: {0}")]
    DegenerateVariance(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, HarvestError>;

pub(crate) fn invalid(msg: impl Into<String>) -> HarvestError {
    HarvestError::InvalidParameter(msg.into())
}
