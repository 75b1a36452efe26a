use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An exact division left a nonzero remainder.
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    /// A computation that must produce integers produced a fraction.
    #[error("non-integral result: {0}")]
    NonIntegralResult(String),
    /// Text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A reflection or translation left the category of representations.
    #[error("result leaves the representation category: {0}")]
    OutOfCategory(String),
    /// The dimension vector is not a root, or no formula applies to it.
    #[error("not a root: {0}")]
    NotARoot(String),
    /// No defect -2 splitting was found.
    #[error("no splitting found for {0}")]
    NoSplitting(String),
    /// A prime is not of good reduction for a representation.
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    /// Point counts did not interpolate to an integer polynomial.
    #[error("non-integral interpolation: {0}")]
    NonIntegralInterpolation(String),
    /// A parameter lies outside the allowed range.
    #[error("bad parameter: {0}")]
    BadParameter(String),
    /// Coefficient quiver labels do not match the quiver.
    #[error("inconsistent labels: {0}")]
    InconsistentLabels(String),
    /// Input exceeds the size guard of an operation.
    #[error("input too large: {0}")]
    TooLarge(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
