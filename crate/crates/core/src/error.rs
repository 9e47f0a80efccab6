use thiserror::Error;

use crate::graph::Side;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("unknown {side} node `{label}`")]
    UnknownNode { side: Side, label: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("{side} side has {nodes} nodes, above the distance-matrix cap of {cap}; raise the cap or force")]
    MatrixTooLarge { side: Side, nodes: usize, cap: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
