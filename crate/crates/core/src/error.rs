//! Error types shared across the crate.

use thiserror::Error;

use crate::operator::ValidationReport;

/// Failures of the dense Hermitian kernel.
#[derive(Debug, Clone, Error)]
pub enum LinalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {min_eigenvalue:.3e} below -{clamp:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64, clamp: f64 },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
}

/// Failures of the operator model and the spectral pipeline.
#[derive(Debug, Clone, Error)]
pub enum SpectrumError {
    #[error("invalid operator:\n{0}")]
    InvalidOperator(ValidationReport),

    #[error("period {p} is too short for the fiber matrix; unroll the operator to period >= 3")]
    PeriodTooShort { p: usize },

    #[error("need at least {min} grid samples, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("eigensolver failed on fiber {index}: {source}")]
    Fiber {
        index: usize,
        source: LinalgError,
    },

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
