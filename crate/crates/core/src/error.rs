//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration or parameter file violates an invariant.
    /// The message names the offending field.
    #[error("validation error: {0}")]
    Validation(String),

    /// A parameter file could not be read or parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A requested operating point cannot be reached; carries the best
    /// achievable value so callers can report margins.
    #[error("capacity error: {message} (achievable: {achievable:.6e})")]
    Capacity { message: String, achievable: f64 },

    /// A numeric routine failed to meet its tolerance; carries the best
    /// estimate and the tolerance actually reached.
    #[error("numeric error: {message} (best estimate {best_estimate:.9e}, achieved tol {achieved_tol:.3e})")]
    Numeric {
        message: String,
        best_estimate: f64,
        achieved_tol: f64,
    },

    /// A sweep or solver found no feasible solution.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
