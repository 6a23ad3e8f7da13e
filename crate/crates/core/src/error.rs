use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("transform rejected: mode {mode:?} maps to non-integral frequency")]
    TransformRejected { mode: Vec<i64> },

    #[error("resonant direction: |k.Q| = {denominator:e} below threshold {threshold:e} for k = {frequency:?}")]
    Resonance {
        frequency: Vec<i64>,
        denominator: f64,
        threshold: f64,
    },

    #[error("expansion order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("quadrature did not converge to {tol:e} (estimate {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("invalid solver configuration: {0}")]
    SolverConfig(String),

    #[error("grid solver supports dimensions 1 to 3, got {0}")]
    UnsupportedDimension(usize),

    #[error("invalid block decomposition: {0}")]
    InvalidBlocks(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}
