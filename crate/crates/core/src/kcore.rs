//! Core decomposition, the coreness index, and k-core retrieval.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::{GraphError, SearchError};
use crate::graph::{NodeId, Subgraph, WeightedGraph};
use crate::local::LocalGraph;

/// Coreness of every node, indexed by [`NodeId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreIndex {
    coreness: Vec<u32>,
    delta_max: u32,
}

impl CoreIndex {
    pub fn from_coreness(coreness: Vec<u32>) -> Self {
        let delta_max = coreness.iter().copied().max().unwrap_or(0);
        CoreIndex { coreness, delta_max }
    }

    #[inline]
    pub fn coreness(&self, v: NodeId) -> u32 {
        self.coreness[v.index()]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.coreness
    }

    pub fn delta_max(&self) -> u32 {
        self.delta_max
    }

    pub fn len(&self) -> usize {
        self.coreness.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coreness.is_empty()
    }
}

/// Computes the coreness of every node by minimum-degree peeling.
///
/// Nodes are kept in degree buckets (Batagelj–Zaversnik), giving O(n + m).
/// Processing nodes in bucket order assigns each the current minimum degree
/// `d` when it leaves, which is the same value the repeated-sort
/// formulation produces.
pub fn core_decompose(g: &WeightedGraph) -> CoreIndex {
    let n = g.node_count();
    let mut deg: Vec<usize> = g.nodes().map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    let mut bin = alloc::vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let c = *b;
        *b = start;
        start += c;
    }
    let mut pos = alloc::vec![0usize; n];
    let mut vert = alloc::vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    if !bin.is_empty() {
        bin[0] = 0;
    }

    for i in 0..n {
        let v = vert[i];
        for (u, _) in g.adj(NodeId::new(v)) {
            let u = u.index();
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert[pu] = w;
                    pos[w] = pu;
                    vert[pw] = u;
                    pos[u] = pw;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }

    CoreIndex::from_coreness(deg.into_iter().map(|d| d as u32).collect())
}

/// Induced subgraph on `{v : coreness(v) >= k}`.
pub fn kcore_of<'g>(g: &'g WeightedGraph, idx: &CoreIndex, k: u32) -> Subgraph<'g> {
    Subgraph::from_sorted(g, g.nodes().filter(|&v| idx.coreness(v) >= k).collect())
}

pub(crate) fn require_in_core(g: &WeightedGraph, idx: &CoreIndex, query: &[NodeId], k: u32) -> Result<(), SearchError> {
    if query.is_empty() {
        return Err(SearchError::InvalidQuery("empty query set"));
    }
    for &q in query {
        if !g.contains(q) {
            return Err(GraphError::UnknownNode(q).into());
        }
        let c = idx.coreness(q);
        if c < k {
            return Err(SearchError::QueryNotInCore { node: q, coreness: c, k });
        }
    }
    Ok(())
}

/// Component of the k-core that holds every query node.
///
/// Traverses only nodes with coreness `>= k`, starting from the first query
/// node, so the rest of the k-core is never touched.
pub fn maximal_connected_kcore<'g>(
    g: &'g WeightedGraph,
    idx: &CoreIndex,
    query: &[NodeId],
    k: u32,
) -> Result<Subgraph<'g>, SearchError> {
    require_in_core(g, idx, query, k)?;
    let root = query[0];
    let mut seen = alloc::vec![false; g.node_count()];
    let mut queue = VecDeque::new();
    seen[root.index()] = true;
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for (u, _) in g.adj(v) {
            if idx.coreness(u) >= k && !core::mem::replace(&mut seen[u.index()], true) {
                queue.push_back(u);
            }
        }
    }
    if let Some(&q) = query.iter().find(|q| !seen[q.index()]) {
        return Err(SearchError::Disconnected(root, q));
    }
    Ok(Subgraph::from_sorted(g, g.nodes().filter(|v| seen[v.index()]).collect()))
}

/// Peels `sub` to its k-core and returns the component containing all of
/// `query`, or `None` if peeling drops a query node or splits the query.
pub fn connected_kcore_containing<'g>(sub: &Subgraph<'g>, query: &[NodeId], k: u32) -> Option<Subgraph<'g>> {
    let local = LocalGraph::new(sub);
    let q: Option<Vec<usize>> = query.iter().map(|&v| local.local(v)).collect();
    let q = q?;
    let comp = local.connected_kcore(alloc::vec![true; local.len()], &q, k as usize)?;
    Some(Subgraph::from_sorted(sub.parent(), local.select(&comp)))
}
