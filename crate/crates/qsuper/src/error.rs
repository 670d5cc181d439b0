use thiserror::Error;

/// Text-format error with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty index set: {0}")]
    EmptyIndexSet(String),
    #[error("generator {0} does not belong to this presentation")]
    ForeignGenerator(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("not a hook partition: {0}")]
    NotHook(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("word is not in the basis: {0}")]
    NotInBasis(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
