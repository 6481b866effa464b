//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the documented domain of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Series inversion requires a leading coefficient of +1 or -1.
    #[error("series not invertible over the integers: leading coefficient {0}")]
    NonUnitLeading(String),

    /// The kernel of the coefficient matrix was not one-dimensional;
    /// the series precision is too low to pin down F_p.
    #[error("insufficient series precision for p = {p}: kernel dimension {dim} at precision {precision}")]
    InsufficientPrecision { p: u64, dim: usize, precision: usize },

    /// CRT lifts did not stabilize within the prime budget.
    #[error("CRT prime budget ({budget}) exhausted for p = {p}")]
    PrimeBudgetExhausted { p: u64, budget: usize },

    /// An exact self-check failed; the computed object is unusable.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// Computed data contradicts an identity the paper proves.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// Working precision is too low to decide a valuation claim.
    #[error("insufficient p-adic precision: {0}")]
    PrecisionLoss(String),

    /// A cache record failed its checksum or verification on load.
    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
