use thiserror::Error;

/// Errors produced by grid operations, propagators and scenario runs.
#[derive(Debug, Error)]
pub enum QsimError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite values in {context}")]
    NonFinite { context: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dt = {dt} exceeds the stability bound {bound} for the {propagator} propagator")]
    DtUnstable {
        dt: f64,
        bound: f64,
        propagator: &'static str,
    },

    #[error("iterative solve did not converge: {0}")]
    NoConvergence(String),

    #[error("field configuration: {0}")]
    FieldConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("trajectories have disjoint time ranges ([{0}, {1}] vs [{2}, {3}])")]
    DisjointTimeRanges(f64, f64, f64, f64),

    #[error("configuration invalid:\n{}", .0.join("\n"))]
    ConfigInvalid(Vec<String>),

    #[error("snapshot format: {0}")]
    SnapshotFormat(String),

    #[error("runtime NaN at t = {t}; last good snapshot: {last_good}")]
    RuntimeNan { t: f64, last_good: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, QsimError>;
