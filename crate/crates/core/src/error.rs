use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ragged matrix: row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("parent group mismatch")]
    ParentMismatch,

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element out of range: {0}")]
    ElementOutOfRange(String),

    #[error("not a p-group: {0}")]
    NotAPGroup(String),

    #[error("malformed descriptor: {0}")]
    MalformedDescriptor(String),

    #[error("no closed form implemented for {0}")]
    NoClosedForm(String),

    #[error("exp excludes the empty set")]
    EmptySubset,

    #[error("unknown point: {0}")]
    UnknownPoint(String),

    #[error("unknown radius: {0}")]
    UnknownRadius(String),

    #[error("invalid ballean: {0}")]
    InvalidBallean(String),

    #[error("size limit exceeded: {what} needs {needed}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("ball leaves the working window [-{0}, {0}]")]
    WindowExceeded(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
