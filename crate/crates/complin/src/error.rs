use thiserror::Error;

use crate::instance::Pair;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{what} index {index} out of range 1..={n}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        n: usize,
    },
    #[error("duplicate pair {pair} in products")]
    DuplicatePair { pair: Pair },
    #[error("pair ({i}, {j}) not normalized (i <= j required)")]
    UnnormalizedPair { i: usize, j: usize },
    #[error("malformed key {key:?}: expected {expected}")]
    BadKey { key: String, expected: &'static str },
    #[error("{context} references pair {pair} not in products")]
    UnknownPair { pair: Pair, context: &'static str },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
