//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace must be 1, got {trace}")]
    BadTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("subsystem dimensions {dims:?} do not multiply to {dim}")]
    SubsystemMismatch { dims: Vec<usize>, dim: usize },

    #[error("invalid subsystem index {index} for {count} subsystems")]
    BadSubsystem { index: usize, count: usize },

    #[error("non-finite matrix entry")]
    NonFinite,

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("negative variance {0:e} beyond roundoff")]
    NegativeVariance(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
