use thiserror::Error;

use crate::circuit::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Variable payloads are 0-based indices; messages print them 1-based.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable {} is not in the assignment scope", .0 + 1)]
    MissingVariable(u32),

    #[error("assignments disagree on variable {}", .0 + 1)]
    Conflict(u32),

    #[error("sweep over 2^{bits} states exceeds the guard of 2^{limit}")]
    GuardExceeded { bits: u32, limit: u32 },

    #[error("circuit is not decomposable: {count} violation(s), first at AND node {first}")]
    NotDecomposable { count: usize, first: NodeId },

    #[error("circuit is not deterministic: OR node {node} has jointly satisfiable children {left} and {right}")]
    NotDeterministic {
        node: NodeId,
        left: NodeId,
        right: NodeId,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("not a linear order: candidates {0}, {1}, {2} form a cycle")]
    Intransitive(usize, usize, usize),

    #[error("scope mismatch: {0}")]
    ScopeMismatch(String),

    #[error("word-based operation supports at most 64 variables, got {0}")]
    TooManyVariables(usize),

    #[error("size guard exceeded: {what} is {actual}, limit {limit}")]
    SizeGuard {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("rectangle cover failed validation: {0}")]
    CoverValidation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
