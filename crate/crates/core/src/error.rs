use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid rank {rank} for type {letter} (allowed: {allowed})")]
    InvalidRank {
        letter: char,
        rank: usize,
        allowed: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("node index {index} out of range for rank {rank}")]
    NodeOutOfRange { index: usize, rank: usize },

    #[error("{what} is not dominant: {value}")]
    NotDominant { what: &'static str, value: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "genus 0: every open substack is co-truncative (finitely many points), \
         no covering is constructed"
    )]
    GenusZero,

    #[error("theta violates the depth condition at node {index}: pairing {pairing} < {threshold}")]
    ThetaTooShallow {
        index: usize,
        pairing: String,
        threshold: String,
    },

    #[error("rank {rank} exceeds the enumeration limit {limit}")]
    RankTooLarge { rank: usize, limit: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
