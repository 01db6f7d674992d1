use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("the empty partition has no {0}")]
    EmptyPartition(&'static str),

    #[error("weight mismatch: |lambda| = {lambda} but |mu| = {mu}")]
    WeightMismatch { lambda: usize, mu: usize },

    #[error("character of an r-cycle needs n >= r (n = {n}, r = {r})")]
    CycleTooLong { n: usize, r: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("interpolation for K_{r} reached rank {rank} of {unknowns} after sampling up to |lambda| = {max_size}")]
    RankDeficient {
        r: usize,
        rank: usize,
        unknowns: usize,
        max_size: usize,
    },

    #[error("K_{r} disagrees with the character oracle at lambda = {lambda}")]
    HeldOutMismatch { r: usize, lambda: String },

    #[error("checksum mismatch for {file}: expected {expected}, found {actual}")]
    ChecksumMismatch {
        file: String,
        expected: String,
        actual: String,
    },

    #[error("table {0}: {1}")]
    Table(String, String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
