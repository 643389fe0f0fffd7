use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The hypothesis of the requested operation does not hold for the input.
    #[error("premise violated: {0}")]
    PremiseViolated(String),

    /// The instance is larger than the enumeration routines accept.
    #[error("instance exceeds enumeration limits: {0}")]
    ScaleLimit(String),

    #[error("point lies on the equator (last coordinate {0:e})")]
    EquatorSingularity(f64),

    /// A freshly computed result failed its own re-verification.
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn premise(msg: impl Into<String>) -> Self {
        Error::PremiseViolated(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
