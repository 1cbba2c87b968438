use thiserror::Error;

#[derive(Debug, Error)]
pub enum KCenterError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge ({u}, {v}) has weight {weight}, expected a value in [1, {bound}]")]
    BadWeight { u: usize, v: usize, weight: u64, bound: u64 },

    #[error("operation requires an unweighted graph")]
    WeightedGraph,

    #[error("source set is empty")]
    EmptySources,

    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("{k} centers cannot cover a graph with {components} connected components")]
    Infeasible { k: usize, components: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cover leaves element {uncovered} of the set-cover instance uncovered")]
    InvalidCover { uncovered: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("decider found no cover even at the upper bound radius {upper}")]
    DecisionFailed { upper: u64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = KCenterError> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> KCenterError {
    KCenterError::Parse {
        line,
        msg: msg.into(),
    }
}
