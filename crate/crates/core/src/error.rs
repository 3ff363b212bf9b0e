use thiserror::Error;

use crate::graph::NodeId;

/// Errors raised while building or addressing a [`WeightedGraph`](crate::WeightedGraph).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("unknown node {0:?}")]
    UnknownNode(NodeId),
    #[error("unknown external node id {0}")]
    UnknownExternal(u64),
    #[error("edge ({u}, {v}) has non-positive or non-finite weight {weight}")]
    InvalidWeight { u: u64, v: u64, weight: f64 },
}

/// Why a query could not be answered, or why an input violated a phase
/// precondition.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("query node {node:?} has coreness {coreness} < k = {k}")]
    QueryNotInCore { node: NodeId, coreness: u32, k: u32 },
    #[error("query nodes {0:?} and {1:?} lie in different components of the k-core")]
    Disconnected(NodeId, NodeId),
    #[error("no connected k-core containing the query within {0} expansion levels")]
    DepthExceeded(usize),
    #[error("expansion exhausted the k-core component without keeping the query together")]
    QuerySplit,
    #[error("infeasible input: {0}")]
    InfeasibleInput(&'static str),
    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),
}
