use thiserror::Error;

/// Failures reading the edge-list text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed edge: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("expected {expected} edges for a tree, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no edges in input")]
    Empty,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("a tree needs at least one vertex")]
    EmptyTree,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid level sequence: {0}")]
    InvalidCode(String),
    #[error("order {n} outside supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("metric dimension {eps} outside 1..={max} for order {n}")]
    EpsOutOfRange { n: usize, eps: usize, max: usize },
    #[error("{function} is undefined at {point}")]
    Domain {
        function: &'static str,
        point: String,
    },
    #[error("empty scan grid")]
    EmptyGrid,
    #[error("metric dimension methods disagree on {code}: brute force {brute}, tree formula {formula}")]
    MethodDisagreement {
        code: String,
        brute: usize,
        formula: usize,
    },
    #[error("invalid report row: {0}")]
    Report(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
