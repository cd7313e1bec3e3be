use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("step index {n} out of range: history holds {len} samples")]
    IndexOutOfRange { n: usize, len: usize },

    #[error("{func} has a pole at {at}")]
    Pole { func: &'static str, at: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("Gauss-Legendre root iteration did not converge for Q = {0}")]
    QuadratureNotConverged(usize),

    #[error("diffusivity {value:e} at quadrature node x = {x} is not positive (ellipticity violated)")]
    Ellipticity { x: f64, value: f64 },

    #[error("system matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("first-step fixed-point iteration did not converge after {iterations} iterations (last update {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("solution norm is not finite at step {0}")]
    NonFinite(usize),

    #[error("time {0} is not a node of the solution grid")]
    OffGrid(f64),

    #[error("no snapshot stored for step {0}")]
    MissingSnapshot(usize),

    #[error("order estimate undefined: {0}")]
    DegenerateOrder(String),
}

pub type Result<T> = std::result::Result<T, Error>;
