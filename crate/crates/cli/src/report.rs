//! JSON rendering of query results, in external node ids.

use icgroup_core::{GroupResult, SearchError, WeightedGraph};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsJson {
    pub tree_ms: f64,
    pub expand_ms: f64,
    pub refine_ms: f64,
    pub iterations: usize,
    pub l_max: usize,
    pub sizes: Vec<usize>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultJson {
    pub feasible: bool,
    /// Short machine-readable failure code, `null` when feasible.
    pub reason: Option<String>,
    pub message: Option<String>,
    pub members: Vec<u64>,
    pub edges: Vec<(u64, u64, f64)>,
    pub weight: f64,
    pub stats: StatsJson,
}

impl ResultJson {
    pub fn new(g: &WeightedGraph, r: &GroupResult<'_>) -> Self {
        let members = r.subgraph.members().iter().map(|&v| g.external_id(v)).collect();
        let edges = r.subgraph.edges().map(|(u, v, w)| (g.external_id(u), g.external_id(v), w)).collect();
        let s = &r.stats;
        ResultJson {
            feasible: r.feasible,
            reason: r.failure.as_ref().map(|e| reason_code(e).to_owned()),
            message: r.failure.as_ref().map(|e| describe(g, e)),
            members,
            edges,
            weight: r.weight,
            stats: StatsJson {
                tree_ms: s.tree_ms,
                expand_ms: s.expand_ms,
                refine_ms: s.refine_ms,
                iterations: s.iterations,
                l_max: s.l_max,
                sizes: s.sizes.clone(),
                weights: s.weights.clone(),
            },
        }
    }
}

pub fn reason_code(e: &SearchError) -> &'static str {
    match e {
        SearchError::Graph(_) => "graph-error",
        SearchError::QueryNotInCore { .. } => "query-not-in-core",
        SearchError::Disconnected(..) => "disconnected",
        SearchError::DepthExceeded(_) => "depth-exceeded",
        SearchError::QuerySplit => "query-split",
        SearchError::InfeasibleInput(_) => "infeasible-input",
        SearchError::InvalidQuery(_) => "invalid-query",
    }
}

/// Error text with internal ids replaced by external ones.
pub fn describe(g: &WeightedGraph, e: &SearchError) -> String {
    let ext = |v| g.external_id(v);
    match e {
        SearchError::QueryNotInCore { node, coreness, k } => {
            format!("query node {} has coreness {coreness}, below k = {k}", ext(*node))
        }
        SearchError::Disconnected(a, b) => {
            format!("query nodes {} and {} are not connected inside the k-core", ext(*a), ext(*b))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use icgroup_core::{core_decompose, search, QuerySpec, Strategy};

    #[test]
    fn json_uses_external_ids() {
        let g = WeightedGraph::from_edges([(10, 20, 1.0), (20, 30, 2.0), (10, 30, 0.5), (30, 40, 1.0)]);
        let idx = core_decompose(&g);
        let r = search(&g, &idx, &QuerySpec::new(vec![g.node(10).unwrap()], 2, Strategy::TreePath));
        let j = ResultJson::new(&g, &r);
        assert!(j.feasible);
        assert_eq!(j.members, vec![10, 20, 30]);
        assert_eq!(j.edges, vec![(10, 20, 1.0), (10, 30, 0.5), (20, 30, 2.0)]);
        assert_eq!(j.weight, 3.5);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"edges\":[[10,20,1.0]"));
        assert_eq!(serde_json::from_str::<ResultJson>(&text).unwrap(), j);
    }

    #[test]
    fn infeasible_message_names_external_node() {
        let g = WeightedGraph::from_edges([(10, 20, 1.0), (20, 30, 2.0), (10, 30, 0.5), (30, 40, 1.0)]);
        let idx = core_decompose(&g);
        let r = search(&g, &idx, &QuerySpec::new(vec![g.node(40).unwrap()], 2, Strategy::TreeMst));
        let j = ResultJson::new(&g, &r);
        assert!(!j.feasible);
        assert_eq!(j.reason.as_deref(), Some("query-not-in-core"));
        assert!(j.message.unwrap().contains("40"));
    }
}
