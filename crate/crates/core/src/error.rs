use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("instance with {children} children exceeds the exhaustive-search budget ({reason})")]
    OverBudget { children: usize, reason: String },

    #[error("node {node} has no solution")]
    MissingSolution { node: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("not a Hamiltonian cycle: {0}")]
    NotHamiltonian(String),

    #[error("solver refused: {0}")]
    Refused(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArguments(msg.into())
    }
}
