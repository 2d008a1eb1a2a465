use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("index out of range at line {line}: {msg}")]
    Range { line: usize, msg: String },

    #[error("conflicting duplicate record at line {line}: {msg}")]
    Consistency { line: usize, msg: String },

    #[error("inconsistent electron/spin configuration: {0}")]
    Configuration(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("numerical integrity violation: {0}")]
    Numerical(String),

    #[error("excitation not present in pool: {0}")]
    PoolMembership(String),

    #[error("eigensolver failed to converge (residual norm {residual:.3e})")]
    EigensolverNonConvergence { residual: f64 },

    #[error("invalid configuration value: {0}")]
    InvalidConfig(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
