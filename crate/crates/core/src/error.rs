//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by construction, validation and the numeric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A probability vector failed validation (negative entry, bad sum, empty).
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Kullback-Leibler requires supp(P) ⊆ supp(Q).
    #[error("absolute continuity violated: q[{index}] = 0 while p[{index}] > 0")]
    AbsoluteContinuityViolation { index: usize },

    /// The f-divergence edge conventions produced +∞.
    #[error("divergence is infinite")]
    Divergent,

    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A generator function failed its construction checks.
    #[error("invalid generator '{label}': {reason}")]
    InvalidGenerator { label: String, reason: String },

    /// An empty half-open window was requested.
    #[error("empty window [{from}, {to})")]
    EmptyWindow { from: usize, to: usize },

    /// A sequence is too short for the requested scan.
    #[error("sequence too short: length {len}, need at least {min}")]
    SequenceTooShort { len: usize, min: usize },

    /// A matrix failed validation (not Hermitian, wrong trace, not PSD, ...).
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// The measurement optimizer only supports qubits.
    #[error("unsupported dimension {0}: the measurement optimizer requires dimension 2")]
    UnsupportedDimension(usize),

    /// An iterative special-function evaluation failed to converge.
    #[error("no convergence in {0}")]
    NoConvergence(&'static str),

    /// Input text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
