use std::fmt;

use thiserror::Error;

/// A parse failure with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self { position, message: message.into() }
    }

    /// Shifts the reported position by `offset` (for errors in substrings).
    pub fn offset(mut self, offset: usize) -> Self {
        self.position += offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {}", self.message, self.position)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {requested} basis vectors requested, limit is {limit}")]
    Capacity { requested: u128, limit: u128 },

    #[error("node {node} out of range 1..={max}")]
    NodeOutOfRange { node: usize, max: usize },

    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("unsupported rewrite: {0}")]
    UnsupportedRewrite(String),

    /// An internal consistency check failed; this signals a convention or
    /// arithmetic defect rather than bad input.
    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
