use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("{0} requires an undirected graph")]
    DirectedUnsupported(&'static str),
    #[error("invalid neighborhood partition: {0}")]
    InvalidPartition(String),
    #[error("edge {0}-{1} is not covered")]
    NotACover(usize, usize),
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unbound variable `{name}` at {line}:{column}")]
    UnboundVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("free variable `{0}`: not a sentence")]
    FreeVariable(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("{atom} atoms cannot be checked against {graph} graphs")]
    PredicateMismatch {
        atom: &'static str,
        graph: &'static str,
    },
    #[error("evaluation exceeded the budget of {0} node visits")]
    BudgetExceeded(u64),
    #[error("sentence has set quantifiers; use the MSO checker")]
    SetQuantifierInFo,
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("graph is not acyclic")]
    NotADag,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid CNF: {0}")]
    InvalidCnf(String),
}
