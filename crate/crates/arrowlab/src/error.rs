//! Error types shared across the crate.

use thiserror::Error;

/// Structural errors on graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("argument must be at least 1")]
    ZeroArgument,
}

/// Errors raised by marked-graph operations (joins, identifications, chains).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkError {
    #[error("no marked edge with label `{0}`")]
    UnknownEdgeLabel(String),
    #[error("no marked vertex with label `{0}`")]
    UnknownVertexLabel(String),
    #[error("mark `{label}` refers to ({a}, {b}) which is not an edge")]
    NotAnEdge { label: String, a: u32, b: u32 },
    #[error("mark `{label}` refers to vertex {vertex} which is out of range")]
    MarkOutOfRange { label: String, vertex: u32 },
    #[error("duplicate mark label `{0}`")]
    DuplicateLabel(String),
    #[error("edge marks `{0}` and `{1}` must be distinct")]
    EqualLabels(String, String),
    #[error("edges ({0}, {1}) and ({2}, {3}) share a vertex; identification requires disjoint edges")]
    SharedVertex(u32, u32, u32, u32),
    #[error("chain requires an odd number of copies, got {0}")]
    EvenCopyCount(usize),
    #[error("chain requires at least one copy")]
    ZeroCopies,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The configured backtracking-node budget was exhausted before the search
/// reached a decision. Deliberately distinct from a negative answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("search budget exhausted before a decision was reached")]
pub struct BudgetExceeded;

/// Errors from the arrowing engine and gadget verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Mark(#[from] MarkError),
    #[error("coloring assigns {got} edges but the graph has {expected}")]
    PartialColoring { got: usize, expected: usize },
    #[error("edge index {index} out of range for a graph with {edge_count} edges")]
    EdgeIndexOutOfRange { index: usize, edge_count: usize },
    #[error("gadget verification precondition failed: {0}")]
    Precondition(String),
    #[error("requested {requested} vertices but the configured cap is {cap}")]
    SenderCapExceeded { requested: usize, cap: usize },
}

/// Errors from first-order formula evaluation and corpus handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("variable `{0}` is not bound and has no assignment")]
    UnboundVariable(String),
    #[error("assignment maps `{var}` to vertex {vertex}, out of range for {n} vertices")]
    AssignmentOutOfRange { var: String, vertex: u32, n: usize },
    #[error("corpus entry {index} is not a sentence (free variables: {free})")]
    NonSentence { index: usize, free: String },
}

/// Errors from the end-to-end witness pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("sender verification failed (condition {condition:?}); refusing to chain")]
    NotASender { condition: Option<u8> },
    #[error("sender is not minimal and minimality was not waived")]
    NotMinimal,
    #[error("signal edges share a vertex; the construction needs non-adjacent signals")]
    AdjacentSignals,
    #[error("chain parameter must be at least 1")]
    BadChainParameter,
    #[error("constructed graph has d(u, v) = {got}, below the required {required}")]
    DistanceTooSmall { got: String, required: String },
    #[error("marks `{0}` missing from the input graph")]
    MissingMark(String),
    #[error("u and v must be distinct vertices")]
    CoincidentMarks,
    #[error(transparent)]
    Mark(#[from] MarkError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
