use thiserror::Error;

/// Errors raised by the library. Failed verification checks are reported
/// through [`Error::CheckFailed`] so callers can distinguish a violated
/// identity from malformed input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("shape mismatch")]
    ShapeMismatch,

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("multi-index {0:?} is not in the expected index set")]
    MultiIndexOutOfBounds(Vec<usize>),

    #[error("operation undefined in degree 0")]
    DegreeZero,

    #[error("permutation {0:?} does not stabilize the shape")]
    NotInStabilizer(Vec<usize>),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("incompatible horn: d_{i}(h_{l}) != d_{}(h_{i})", .l - 1)]
    IncompatibleHorn { i: usize, l: usize },

    #[error("not a chain complex: {0}")]
    NotAComplex(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns `Err(CheckFailed)` with the formatted message unless `cond` holds.
#[macro_export]
macro_rules! ensure_check {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::CheckFailed(format!($($arg)+)));
        }
    };
}
