use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node {node} out of range for a graph of {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("adjacency not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("edge ({0}, {1}) does not exist")]
    MissingEdge(usize, usize),
    #[error("bipartition must have both parts nonempty")]
    BadBipartition,
    #[error("{what} limit exceeded: {got} > {limit}")]
    Limit { what: &'static str, got: usize, limit: usize },
    #[error("reduction did not terminate within {0} passes")]
    NonTermination(usize),
    #[error("outcome length {got} does not match {expected} measured nodes")]
    OutcomeLength { got: usize, expected: usize },
    #[error("outcome is forbidden for this setup")]
    Forbidden,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("setup class is Γ̄; this path requires Γ")]
    NotGamma,
    #[error("basis graph is not of the required form: {0}")]
    Basis(String),
    #[error("inconsistent input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
