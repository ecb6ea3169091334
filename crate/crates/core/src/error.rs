use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, ConeError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConeError {
    #[error("algebra mismatch: {left} vs {right}")]
    DescriptorMismatch { left: &'static str, right: &'static str },

    #[error("element is not invertible (|det| = {det_abs:e})")]
    NonInvertible { det_abs: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of the Gamma factor with index {index} (argument {argument})")]
    Pole { index: usize, argument: f64 },

    #[error("integral diverges: {0}")]
    Divergence(String),

    #[error("precision target missed: error estimate {estimate:e} above {target:e}")]
    Precision { estimate: f64, target: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("element is outside the dense cell P+ K_C N_C (|c + d| = {abs:e})")]
    NotInDenseCell { abs: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl ConeError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        ConeError::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        ConeError::InvalidArgument(msg.into())
    }
}
