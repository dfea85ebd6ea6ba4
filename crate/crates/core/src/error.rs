use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("inflation needs {expected} parts, got {found}")]
    PartCountMismatch { expected: usize, found: usize },
    #[error("inflation part {0} is empty")]
    EmptyPart(usize),
}

/// Failure to read one of the text formats (edge list, graph6, cotree).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("cotree, column {col}: {msg}")]
    Cotree { col: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CotreeError {
    #[error("graph is not a cograph (it contains an induced P4)")]
    NotCograph,
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("invalid cotree: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("malformed expression at operation {index}: {msg}")]
    Malformed { index: usize, msg: String },
    #[error("label `{0}` does not occur in the expression")]
    UnusedLabel(String),
    #[error("label `{0}` is not a sink label")]
    NotASink(String),
    #[error("the expression builds an edgeless graph")]
    EdgelessInput,
    #[error("expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("graph is not a threshold graph")]
    NotThreshold,
    #[error(transparent)]
    Cotree(#[from] CotreeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("exact search supports at most 64 vertices, graph has {0}")]
    TooLarge(usize),
    #[error("budget exhausted after {states} states; {lower} <= lcw <= {upper}")]
    BudgetExceeded { lower: usize, upper: usize, states: u64 },
}
