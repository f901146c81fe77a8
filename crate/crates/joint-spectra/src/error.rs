//! Error type shared across the crate.

/// Errors reported by enumeration, summation, and check routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A domain precondition was violated (bad interval, bad dimension, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An enumeration would exceed the configured point budget.
    #[error("point budget exceeded: ~{estimate:.3e} points needed, budget {budget}")]
    BudgetExceeded { estimate: f64, budget: u64 },

    /// Mismatched dimensions between a measure, mollifier, region, or point.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A grid is too coarse to resolve the requested thickening.
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
