use thiserror::Error;

/// Errors raised by validation and numerical routines.
///
/// Validation never clamps silently: an input that misses a tolerance is
/// rejected with the measured violation so the caller can audit it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("matrix is not Hermitian: max asymmetry {asymmetry:e} exceeds tolerance {tol:e}")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("not a density state: {0}")]
    NotDensity(String),

    #[error("state is not pure: largest eigenvalue {largest}")]
    NotPure { largest: f64 },

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("ball center is not inside the hull: {0}")]
    InvalidCenter(String),

    #[error("channel is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
