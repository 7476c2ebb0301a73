//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by ring operations, solvers, and checkers.
///
/// The split matters for the CLI exit-code taxonomy: usage-level problems
/// (`Parse`, `RingMismatch`, `InvalidRequest`) are distinguished from
/// capability gaps (`CapabilityMissing`, `OracleMissing`, `NotInIdeal`,
/// `BudgetExhausted`), verification failures, and internal invariant
/// breaches (`Internal`), which should never fire on a correct build.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WittError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("capability not available: {0}")]
    CapabilityMissing(String),

    #[error("oracle missing: {0}")]
    OracleMissing(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    /// An exact integer division over Z failed; for ghost-map inversion this
    /// signals that the requested targets are not a Witt-functor operation.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    /// An exact division that serves as a membership certificate failed.
    /// For kernel constructions this means the first component is not in
    /// the required ideal (or the ring lacks the divisibility needed).
    #[error("not in ideal (inexact division): {0}")]
    NotInIdeal(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    /// A structural fact about the universal polynomials failed to hold.
    /// Always a bug, never a recoverable condition.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, WittError>;
