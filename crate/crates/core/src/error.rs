use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("generation gave up after exhausting its budget of {budget} attempts ({detail})")]
    BudgetExhausted { budget: usize, detail: String },

    #[error("{n} variables exceeds the exhaustive-search cap of {cap}")]
    TooManyVariables { n: usize, cap: usize },

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("grid half-width {actual:.3} is smaller than the required extent {required:.3}")]
    GridTooSmall { required: f64, actual: f64 },

    #[error("degree cap {cap} infeasible: {edges} edges over {nodes} nodes")]
    DegreeCapInfeasible { cap: usize, edges: usize, nodes: usize },

    #[error("no cached P(k) for k = {k} at {path}; run `kxor parisi --k {k}` with the same --out, --pieces, --grid and --quad first")]
    MissingCache { k: usize, path: PathBuf },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_arg(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
