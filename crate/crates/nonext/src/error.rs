use thiserror::Error;

/// Error type for all fallible operations in this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("vectors have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("negative entry at index {index}: {value}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("entries must sum to 1 within {tol}, got sum = {sum}")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("vector must be non-empty")]
    EmptySupport,

    #[error("measure has zero total mass, cannot normalize")]
    ZeroMass,

    #[error("entropic index must be a finite nonnegative real, got {0}")]
    InvalidQ(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid phi function: {0}")]
    InvalidPhi(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(
        "optimizer did not converge within {iterations} iterations \
         (best objective {objective}, iterate {iterate:?})"
    )]
    OptimizerDidNotConverge {
        iterations: usize,
        objective: f64,
        iterate: Vec<f64>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
