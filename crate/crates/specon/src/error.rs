//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by constructors, searches, and numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a domain contract (negative gap, even-length tuple, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An index was outside its documented range.
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// An operation that requires strictly positive gaps was called on the boundary.
    #[error("gap vector is on the boundary (entry {index} = 0); {context}")]
    BoundaryInput { index: usize, context: &'static str },

    /// Adaptive quadrature ran out of subdivision depth before reaching the
    /// requested tolerance. Carries the best estimate so callers can diagnose.
    #[error("quadrature did not converge: estimate {estimate}, error {error_estimate} > tolerance {requested_tol}")]
    QuadratureFailure {
        estimate: f64,
        error_estimate: f64,
        requested_tol: f64,
    },

    /// Two evaluation routes that must agree disagreed beyond tolerance.
    /// This is always reported loudly, never absorbed into a result.
    #[error("evaluation routes disagree in {what}: {lhs} vs {rhs} (|diff| = {diff}, allowed {allowed})")]
    RouteDisagreement {
        what: &'static str,
        lhs: f64,
        rhs: f64,
        diff: f64,
        allowed: f64,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
