use thiserror::Error;

/// Errors raised by the library. Every variant is a precondition failure or a
/// malformed input; exact arithmetic never fails silently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("ambient size mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("invalid minor index: {0}")]
    InvalidMinor(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("orbit sampling failed after {0} attempts")]
    SamplingFailed(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
