use thiserror::Error;

/// Errors raised by constructors and comparators in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {value} in column {col} exceeds matrix size {n}")]
    EntryOutOfRange { col: usize, value: usize, n: usize },

    #[error("row {row} holds more than one 1")]
    RepeatedRow { row: usize },

    #[error("column {col} holds more than one 1")]
    RepeatedColumn { col: usize },

    #[error("matrix is not square 0/1: {0}")]
    MalformedMatrix(String),

    #[error("{0} is not symmetric")]
    NotSymmetric(String),

    #[error("{0} is not a permutation")]
    NotPermutation(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("k = {k} out of range for n = {n}")]
    RankOutOfRange { n: usize, k: usize },

    #[error("size {n} exceeds the limit {limit} for this operation")]
    TooLarge { n: usize, limit: usize },

    #[error("cannot parse one-line notation {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("({i},{j}) is not a suitable rise of {sigma}")]
    NotSuitable { sigma: String, i: usize, j: usize },

    #[error("{to} does not cover {from}")]
    NotACover { from: String, to: String },

    #[error("cover {from} -> {to} is produced by {count} distinct moves")]
    AmbiguousCover { from: String, to: String, count: usize },

    #[error("cover {from} -> {to} matches no move")]
    UnclassifiedCover { from: String, to: String },

    #[error("chain is not saturated at step {step}")]
    UnsaturatedChain { step: usize },

    #[error("map is not a poset isomorphism: {0}")]
    NotIsomorphism(String),

    #[error(transparent)]
    Poset(#[from] crate::poset::PosetError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
