//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The body (or a simplex) has no interior in its ambient dimension.
    #[error("degenerate body: {0}")]
    DegenerateBody(String),

    #[error("operation not supported for body kind: {0}")]
    UnsupportedKind(String),

    #[error("dimension {dim} not supported: {reason}")]
    UnsupportedDimension { dim: usize, reason: String },

    #[error("matrix is not invertible (|det| = {det:e})")]
    NonInvertible { det: f64 },

    #[error("a ball can only be mapped by a scaled orthogonal matrix")]
    BallNonOrthogonal,

    /// The radial integral of `e^{-h}` diverges: the origin is not an
    /// interior point of the (translated) body.
    #[error("integral diverges: {0}")]
    NonIntegrable(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    MaxIterExceeded { iterations: usize, residual: f64 },

    #[error("bracket failure: {0}")]
    BracketFailure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
