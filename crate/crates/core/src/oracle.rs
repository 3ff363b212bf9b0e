//! Exact intimate-core group by exhaustive subset enumeration.
//!
//! Works on bitmasks over the whole (tiny) graph and shares no code with the
//! heuristic pipeline, so it can serve as a reference for it.

use alloc::vec::Vec;
use thiserror::Error;

use crate::graph::{NodeId, WeightedGraph};

pub const MAX_ORACLE_NODES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {nodes} nodes, budget is {budget} (hard limit {MAX_ORACLE_NODES})")]
    BudgetExceeded { nodes: usize, budget: usize },
    #[error("query node {0:?} is not in the graph")]
    UnknownNode(NodeId),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleGroup {
    pub members: Vec<NodeId>,
    pub weight: f64,
}

/// Minimum-weight connected k-core containing `query`, or `None` if no
/// subset qualifies. Equal weights resolve to the lexicographically smallest
/// member list.
pub fn oracle_min_group(
    g: &WeightedGraph,
    query: &[NodeId],
    k: u32,
    node_budget: usize,
) -> Result<Option<OracleGroup>, OracleError> {
    let n = g.node_count();
    let budget = node_budget.min(MAX_ORACLE_NODES);
    if n > budget {
        return Err(OracleError::BudgetExceeded { nodes: n, budget: node_budget });
    }
    let mut required: u32 = 0;
    for &q in query {
        if !g.contains(q) {
            return Err(OracleError::UnknownNode(q));
        }
        required |= 1 << q.index();
    }
    let adj: Vec<u32> = g.nodes().map(|v| g.neighbors(v).unwrap().fold(0u32, |m, (u, _)| m | (1 << u.index()))).collect();
    let edges: Vec<(usize, usize, f64)> = g.edges().map(|(u, v, w)| (u.index(), v.index(), w)).collect();
    let free: u32 = ((1u64 << n) - 1) as u32 & !required;

    let mut best: Option<(f64, Vec<NodeId>)> = None;
    // iterate over all submasks of `free`
    let mut sub = free;
    loop {
        let mask = sub | required;
        if mask != 0 && is_connected_kcore(mask, &adj, k) {
            let weight: f64 = edges
                .iter()
                .filter(|&&(u, v, _)| mask >> u & 1 == 1 && mask >> v & 1 == 1)
                .map(|e| e.2)
                .sum();
            let members: Vec<NodeId> = (0..n).filter(|&i| mask >> i & 1 == 1).map(NodeId::new).collect();
            let better = match &best {
                None => true,
                Some((bw, bm)) => weight < *bw || (weight == *bw && members < *bm),
            };
            if better {
                best = Some((weight, members));
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    Ok(best.map(|(weight, members)| OracleGroup { members, weight }))
}

fn is_connected_kcore(mask: u32, adj: &[u32], k: u32) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (adj[i] & mask).count_ones() < k {
            return false;
        }
    }
    let start = mask & mask.wrapping_neg();
    let mut reached = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let i = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[i] & mask;
        }
        frontier = next & !reached;
        reached |= next;
    }
    reached == mask
}
