use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vocabulary: {0}")]
    InvalidVocabulary(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generators of mixed degree ({0} and {1})")]
    MixedDegrees(usize, usize),

    #[error("{0} is too large for exhaustive enumeration")]
    TooLarge(String),

    #[error("degree {degree} exceeds the limit of {limit} for {what}")]
    DegreeGuard {
        what: &'static str,
        degree: usize,
        limit: usize,
    },

    #[error("exhaustive guard exceeded: {slots} tuple slots (limit {limit})")]
    ExhaustiveGuard { slots: usize, limit: usize },

    #[error("empty point set")]
    EmptySubset,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structure is not in S_n(A, H)")]
    NotMember,

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("census interrupted after {completed} of {total} chunks")]
    Interrupted { completed: u64, total: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
