use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("PBM parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("image dimensions differ: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("region mask is empty; light transmission is undefined")]
    DegenerateRegion,

    #[error("secret image has a single color; contrast is undefined")]
    DegenerateSecret,

    #[error("partition {partition} cannot be realized: {reason}")]
    InfeasiblePartition { partition: String, reason: String },

    #[error("corrupted dealer state: {0}")]
    State(String),

    #[error("invalid manifest: {0}")]
    Manifest(String),

    #[error("unsupported manifest version {found} (this build reads version {expected})")]
    Version { found: u32, expected: u32 },

    #[error("checksum mismatch: manifest records {expected:08x}, payload hashes to {found:08x}")]
    Checksum { expected: u32, found: u32 },

    #[error("curve `{curve}` does not come within {epsilon} of its limit for any n <= {bound}")]
    NoConvergence {
        curve: String,
        epsilon: f64,
        bound: u64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}
