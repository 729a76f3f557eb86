//! Error type shared by all modules.

use alloc::string::String;

/// Errors raised by dataset handling, preprocessing and model fitting.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An operation received an empty collection it cannot work on.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// Shapes of two inputs do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A raw stage label outside the known AJCC code set.
    #[error("unknown stage code {0}")]
    UnknownStageCode(i64),

    /// Schema violations: duplicate columns, missing label column, etc.
    #[error("schema error: {0}")]
    Schema(String),

    /// A value that must be finite is NaN or infinite.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// A configuration value outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Data required by a fit operation is entirely absent.
    #[error("missing data: {0}")]
    MissingData(String),

    /// Exact Shapley enumeration refused; the caller should switch to sampling.
    #[error("{0} features exceed the exact Shapley limit of {1}; use sampling mode")]
    TooManyFeaturesForExact(usize, usize),

    /// A sealed-pipeline or bookkeeping invariant failed; indicates a bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = core::result::Result<T, Error>;
