//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by sector construction, linear algebra, and enumeration.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("mode index {mode} out of range for {n} modes")]
    ModeOutOfRange { mode: usize, n: usize },

    #[error("electron count {eta} out of range for {n} modes")]
    EtaOutOfRange { eta: usize, n: usize },

    #[error("sector dimension {dim} exceeds the configured maximum {cap}; instance too large")]
    SectorTooLarge { dim: u128, cap: usize },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    #[error("operators act on different sectors: {context}")]
    SectorMismatch { context: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |A - A†| = {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal {off:.3e})")]
    ConvergenceFailure { sweeps: usize, off: f64 },

    #[error("unsupported product-formula order {order}; expected 1 or an even order <= 10")]
    UnsupportedOrder { order: u32 },

    #[error("invalid commutator word: {context}")]
    InvalidGamma { context: String },

    #[error("enumeration budget exceeded: {visits} visits over cap {cap}")]
    BudgetExceeded { visits: u64, cap: u64 },

    #[error("degenerate fit input: {context}")]
    DegenerateFit { context: String },

    #[error("invalid parameter: {context}")]
    InvalidParameter { context: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dim(context: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
        }
    }

    pub(crate) fn sector(context: impl Into<String>) -> Self {
        Error::SectorMismatch {
            context: context.into(),
        }
    }

    pub(crate) fn param(context: impl Into<String>) -> Self {
        Error::InvalidParameter {
            context: context.into(),
        }
    }
}
