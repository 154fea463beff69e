use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter {xi} outside knot range [{lo}, {hi}]")]
    Domain { xi: f64, lo: f64, hi: f64 },

    #[error("invalid knot vector: {0}")]
    InvalidKnots(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("degenerate surface tangents (|a1 x a2| = {cross:.3e}, |a1||a2| = {scale:.3e})")]
    SingularSurface { cross: f64, scale: f64 },

    #[error("inverted surface element: area change J = {0:.3e}")]
    InvertedSurface(f64),

    #[error("invalid edge id {0}")]
    InvalidEdge(usize),

    #[error("unsupported degree {0} for the hybrid discretization (B2M1 requires p = 2)")]
    UnsupportedDegree(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("Newton iteration did not converge in load step {step} after {iterations} iterations; residual history {history:?}")]
    NotConverged {
        step: usize,
        iterations: usize,
        history: Vec<f64>,
    },

    #[error("normal projection failed at parametric point ({0}, {1})")]
    Projection(f64, f64),

    #[error("missing reference field: {0}")]
    MissingReference(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
