//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by validation, linear algebra, and I/O layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("negative off-diagonal rate at ({row}, {col}): {value:.6e}")]
    NegativeOffDiagonal { row: usize, col: usize, value: f64 },

    #[error("column {col} of the generator sums to {sum:.6e}, expected 0")]
    ColumnSumNonzero { col: usize, sum: f64 },

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("map is not completely positive: min Choi eigenvalue {min_eigenvalue:.6e}")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("not a quantum dynamical semigroup generator: {0}")]
    NotQdsGenerator(String),

    #[error(
        "zero eigenvalue of the generator is not semisimple \
         (kernel dim {kernel_dim}, left kernel dim {left_kernel_dim})"
    )]
    NonSemisimpleZeroEigenvalue {
        kernel_dim: usize,
        left_kernel_dim: usize,
    },

    #[error("postulate (P) fails: stationary candidate has min eigenvalue {min_eigenvalue:.6e}")]
    PostulateFailed { min_eigenvalue: f64 },

    #[error("density matrix is not faithful: min eigenvalue {min_eigenvalue:.6e}")]
    NotFaithful { min_eigenvalue: f64 },

    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed problem document: {0}")]
    Format(String),

    #[error("linear algebra backend: {0}")]
    Backend(#[from] ndarray_linalg::error::LinalgError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
