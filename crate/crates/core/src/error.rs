use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by graph construction, labeling checks and index computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partite specification: {0}")]
    InvalidPartite(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("graph has {requested} vertices, limit is {limit}")]
    SizeLimit { requested: usize, limit: usize },

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("adjacency file line {line}: {msg}")]
    AdjacencyFormat { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("vertex {0} has no label")]
    MissingLabel(usize),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("outside the domain of {what}: {why}")]
    OutOfDomain { what: &'static str, why: String },

    #[error("graph is not regular")]
    NotRegular,

    #[error("graph has an isolated vertex")]
    IsolatedVertex,

    #[error("search budget exceeded after {elapsed_ms} ms")]
    BudgetExceeded { elapsed_ms: u128 },

    #[error("no formula covers {0}")]
    Unsupported(String),

    #[error("construction produced an uncertified result: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(what: &'static str, why: impl Into<String>) -> Self {
        Error::OutOfDomain {
            what,
            why: why.into(),
        }
    }
}
