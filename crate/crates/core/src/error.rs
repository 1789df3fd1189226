use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the simulation core.
///
/// Everything except [`Error::Sink`] is an invalid-argument condition: the
/// caller handed in something that violates a documented precondition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("arm index {arm} out of range for {arms} arms")]
    ArmOutOfRange { arm: usize, arms: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid bonus schedule: {0}")]
    InvalidBonus(String),

    #[error("invalid policy: {0}")]
    InvalidPolicy(String),

    #[error("action set is empty")]
    EmptyActionSet,

    #[error("action norm {0} exceeds 1")]
    ActionNorm(f64),

    #[error("quadratic form {0} is negative")]
    NegativeQuadratic(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("output sink failed: {0}")]
    Sink(#[from] std::io::Error),
}

impl Error {
    pub fn is_invalid_argument(&self) -> bool {
        !matches!(self, Error::Sink(_))
    }
}
