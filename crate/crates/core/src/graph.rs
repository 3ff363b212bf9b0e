//! Weighted undirected simple graphs and induced subgraphs.
//!
//! External node ids are arbitrary `u64` values. They are remapped to a
//! dense range `0..n` in ascending external order, so ordering by
//! [`NodeId`] is the same as ordering by external id. Adjacency is stored
//! in CSR form with every neighbor list sorted by node id.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;

use crate::error::GraphError;

/// Dense internal node identifier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(u32);

impl NodeId {
    #[inline]
    pub const fn new(index: usize) -> Self {
        NodeId(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Counters describing what [`GraphBuilder`] discarded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Collects edges keyed by external id and produces a [`WeightedGraph`].
///
/// Self-loops are dropped and counted. A repeated unordered pair keeps the
/// smaller weight. Weights must be finite and strictly positive.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    nodes: BTreeSet<u64>,
    edges: BTreeMap<(u64, u64), f64>,
    report: BuildReport,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: u64) -> &mut Self {
        self.nodes.insert(id);
        self
    }

    pub fn add_edge(&mut self, u: u64, v: u64, weight: f64) -> Result<&mut Self, GraphError> {
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(GraphError::InvalidWeight { u, v, weight });
        }
        self.nodes.insert(u);
        self.nodes.insert(v);
        if u == v {
            self.report.self_loops += 1;
            return Ok(self);
        }
        let key = if u < v { (u, v) } else { (v, u) };
        match self.edges.get_mut(&key) {
            Some(w) => {
                self.report.duplicates += 1;
                if weight < *w {
                    *w = weight;
                }
            }
            None => {
                self.edges.insert(key, weight);
            }
        }
        Ok(self)
    }

    pub fn report(&self) -> BuildReport {
        self.report
    }

    pub fn build(self) -> WeightedGraph {
        let external: Vec<u64> = self.nodes.into_iter().collect();
        let n = external.len();
        let lookup = |id: u64| external.binary_search(&id).expect("endpoint registered");

        let mut degree = alloc::vec![0usize; n];
        let pairs: Vec<(usize, usize, f64)> = self
            .edges
            .into_iter()
            .map(|((u, v), w)| (lookup(u), lookup(v), w))
            .collect();
        for &(u, v, _) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut targets = alloc::vec![NodeId(0); 2 * pairs.len()];
        let mut weights = alloc::vec![0.0; 2 * pairs.len()];
        // pairs are sorted by (u, v) with u < v: lower neighbors go in first,
        // then higher ones, which leaves every neighbor list sorted
        for &(u, v, w) in &pairs {
            targets[fill[v]] = NodeId::new(u);
            weights[fill[v]] = w;
            fill[v] += 1;
        }
        for &(u, v, w) in &pairs {
            targets[fill[u]] = NodeId::new(v);
            weights[fill[u]] = w;
            fill[u] += 1;
        }
        for v in 0..n {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            debug_assert!(targets[lo..hi].windows(2).all(|p| p[0] < p[1]));
        }

        WeightedGraph { external, offsets, targets, weights }
    }
}

/// Undirected simple graph with strictly positive edge weights.
#[derive(Clone, PartialEq)]
pub struct WeightedGraph {
    external: Vec<u64>,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("nodes", &self.node_count())
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl WeightedGraph {
    /// Convenience constructor; panics on invalid weights.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (u64, u64, f64)>,
    {
        let mut b = GraphBuilder::new();
        for (u, v, w) in edges {
            b.add_edge(u, v, w).expect("valid edge weight");
        }
        b.build()
    }

    pub fn node_count(&self) -> usize {
        self.external.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::new)
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v.index() < self.node_count()
    }

    pub fn node(&self, external: u64) -> Option<NodeId> {
        self.external.binary_search(&external).ok().map(NodeId::new)
    }

    pub fn try_node(&self, external: u64) -> Result<NodeId, GraphError> {
        self.node(external).ok_or(GraphError::UnknownExternal(external))
    }

    pub fn external_id(&self, v: NodeId) -> u64 {
        self.external[v.index()]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v.index() + 1] - self.offsets[v.index()]
    }

    /// Neighbors of `v` with edge weights, ascending by node id.
    pub fn neighbors(&self, v: NodeId) -> Result<Neighbors<'_>, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownNode(v));
        }
        Ok(self.adj(v))
    }

    #[inline]
    pub(crate) fn adj(&self, v: NodeId) -> Neighbors<'_> {
        let (lo, hi) = (self.offsets[v.index()], self.offsets[v.index() + 1]);
        Neighbors { targets: &self.targets[lo..hi], weights: &self.weights[lo..hi] }
    }

    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let n = self.adj(u);
        n.targets.binary_search(&v).ok().map(|i| n.weights[i])
    }

    /// Every edge once as `(u, v, w)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.nodes().flat_map(move |u| self.adj(u).filter(move |&(v, _)| u < v).map(move |(v, w)| (u, v, w)))
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).sum()
    }
}

/// Neighbor slice of one node.
#[derive(Clone, Debug)]
pub struct Neighbors<'g> {
    targets: &'g [NodeId],
    weights: &'g [f64],
}

impl<'g> Neighbors<'g> {
    pub fn ids(&self) -> &'g [NodeId] {
        self.targets
    }

    pub fn weights(&self) -> &'g [f64] {
        self.weights
    }
}

impl Iterator for Neighbors<'_> {
    type Item = (NodeId, f64);

    fn next(&mut self) -> Option<Self::Item> {
        let (&t, rest_t) = self.targets.split_first()?;
        let (&w, rest_w) = self.weights.split_first()?;
        self.targets = rest_t;
        self.weights = rest_w;
        Some((t, w))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.targets.len(), Some(self.targets.len()))
    }
}

impl ExactSizeIterator for Neighbors<'_> {}

/// Node-induced subgraph of a parent graph.
///
/// Members are kept sorted; the edge set is every parent edge with both
/// endpoints among the members.
#[derive(Clone, PartialEq)]
pub struct Subgraph<'g> {
    parent: &'g WeightedGraph,
    members: Vec<NodeId>,
}

impl fmt::Debug for Subgraph<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgraph").field("members", &self.members).finish()
    }
}

impl<'g> Subgraph<'g> {
    pub fn empty(parent: &'g WeightedGraph) -> Self {
        Subgraph { parent, members: Vec::new() }
    }

    pub fn whole(parent: &'g WeightedGraph) -> Self {
        Subgraph { parent, members: parent.nodes().collect() }
    }

    /// Caller guarantees `members` is sorted, deduplicated and within range.
    pub(crate) fn from_sorted(parent: &'g WeightedGraph, members: Vec<NodeId>) -> Self {
        debug_assert!(members.windows(2).all(|p| p[0] < p[1]));
        debug_assert!(members.iter().all(|&v| parent.contains(v)));
        Subgraph { parent, members }
    }

    pub fn parent(&self) -> &'g WeightedGraph {
        self.parent
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn into_members(self) -> Vec<NodeId> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// Neighbors of `v` that are members, with weights.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.parent.adj(v).filter(move |&(u, _)| self.contains(u))
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).count()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.members.iter().map(|&v| self.degree(v)).min()
    }

    /// Induced edges once each as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.members
            .iter()
            .flat_map(move |&u| self.neighbors(u).filter(move |&(v, _)| u < v).map(move |(v, w)| (u, v, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Sum of induced edge weights.
    pub fn weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).sum()
    }

    /// Maximal connected member set containing `v` (breadth-first).
    pub fn component_containing(&self, v: NodeId) -> Result<Subgraph<'g>, GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownNode(v));
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for (x, _) in self.neighbors(u) {
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        Ok(Subgraph::from_sorted(self.parent, seen.into_iter().collect()))
    }

    pub fn is_connected(&self) -> bool {
        match self.members.first() {
            None => true,
            Some(&v) => self.component_containing(v).map(|c| c.len() == self.len()).unwrap_or(false),
        }
    }

    /// Structural check: non-empty, connected, contains every query node and
    /// every member has induced degree at least `k`.
    pub fn is_connected_kcore_containing(&self, query: &[NodeId], k: u32) -> bool {
        !self.is_empty()
            && query.iter().all(|&q| self.contains(q))
            && self.members.iter().all(|&v| self.degree(v) >= k as usize)
            && self.is_connected()
    }
}

/// Sum of all induced edge weights of `h`.
pub fn group_weight(h: &Subgraph<'_>) -> f64 {
    h.weight()
}

/// Subgraph of `g` induced by `members` (duplicates ignored).
pub fn induced_subgraph<'g, I>(g: &'g WeightedGraph, members: I) -> Result<Subgraph<'g>, GraphError>
where
    I: IntoIterator<Item = NodeId>,
{
    let mut m: Vec<NodeId> = members.into_iter().collect();
    if let Some(&bad) = m.iter().find(|&&v| !g.contains(v)) {
        return Err(GraphError::UnknownNode(bad));
    }
    m.sort_unstable();
    m.dedup();
    Ok(Subgraph::from_sorted(g, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn ext(g: &WeightedGraph, ids: &[NodeId]) -> Vec<u64> {
        ids.iter().map(|&v| g.external_id(v)).collect()
    }

    #[test]
    fn builder_counts_and_dedupes() {
        let mut b = GraphBuilder::new();
        b.add_edge(1, 2, 0.5).unwrap().add_edge(2, 3, 1.0).unwrap();
        let g = b.build();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));

        let mut b = GraphBuilder::new();
        b.add_edge(1, 2, 0.5).unwrap().add_edge(2, 1, 0.7).unwrap();
        assert_eq!(b.report().duplicates, 1);
        let g = b.build();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight(g.node(1).unwrap(), g.node(2).unwrap()), Some(0.5));

        let mut b = GraphBuilder::new();
        b.add_edge(1, 1, 0.5).unwrap();
        assert_eq!(b.report().self_loops, 1);
        assert_eq!(b.build().edge_count(), 0);
    }

    #[test]
    fn builder_rejects_bad_weights() {
        let mut b = GraphBuilder::new();
        assert!(matches!(b.add_edge(1, 2, 0.0), Err(GraphError::InvalidWeight { .. })));
        assert!(b.add_edge(1, 2, -1.0).is_err());
        assert!(b.add_edge(1, 2, f64::NAN).is_err());
        assert!(b.add_edge(1, 2, f64::INFINITY).is_err());
    }

    #[test]
    fn sparse_external_ids_are_remapped_in_order() {
        let g = WeightedGraph::from_edges([(900, 7, 1.0), (7, 12_000_000_000, 2.0)]);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.external_id(NodeId::new(0)), 7);
        assert_eq!(g.external_id(NodeId::new(2)), 12_000_000_000);
        assert_eq!(g.node(900), Some(NodeId::new(1)));
        assert_eq!(g.node(8), None);
    }

    #[test]
    fn neighbors_of_bridge_node() {
        let g = fixtures::two_blocks();
        let v5 = g.node(5).unwrap();
        let n: Vec<u64> = g.neighbors(v5).unwrap().map(|(u, _)| g.external_id(u)).collect();
        assert_eq!(n, vec![4, 6]);
        assert_eq!(g.degree(v5), 2);
        let v2 = g.node(2).unwrap();
        assert_eq!(g.edge_weight(v2, g.node(3).unwrap()), Some(1.0));
    }

    #[test]
    fn neighbors_of_isolated_and_triangle() {
        let mut b = GraphBuilder::new();
        b.add_node(10);
        b.add_edge(1, 2, 1.0).unwrap().add_edge(2, 3, 1.0).unwrap().add_edge(1, 3, 1.0).unwrap();
        let g = b.build();
        assert_eq!(g.neighbors(g.node(10).unwrap()).unwrap().count(), 0);
        let n: Vec<NodeId> = g.neighbors(g.node(2).unwrap()).unwrap().map(|(u, _)| u).collect();
        assert_eq!(ext(&g, &n), vec![1, 3]);
        assert_eq!(g.neighbors(NodeId::new(99)).err(), Some(GraphError::UnknownNode(NodeId::new(99))));
    }

    #[test]
    fn group_weight_of_g1_is_15() {
        let g = fixtures::two_blocks();
        let g1 = induced_subgraph(&g, [1, 2, 3, 4].map(|x| g.node(x).unwrap())).unwrap();
        assert_eq!(g1.edge_count(), 6);
        assert_eq!(group_weight(&g1), 15.0);
        let single = induced_subgraph(&g, [g.node(1).unwrap()]).unwrap();
        assert_eq!(group_weight(&single), 0.0);
    }

    #[test]
    fn induced_subgraph_edges() {
        let g = fixtures::two_blocks();
        let all = induced_subgraph(&g, g.nodes()).unwrap();
        assert_eq!(all.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(induced_subgraph(&g, [NodeId::new(0)]).unwrap().edge_count(), 0);
        assert!(induced_subgraph(&g, [NodeId::new(500)]).is_err());
    }

    #[test]
    fn components() {
        let g = WeightedGraph::from_edges([(1, 2, 1.0), (2, 3, 1.0), (1, 3, 1.0), (4, 5, 1.0), (5, 6, 1.0), (4, 6, 1.0)]);
        let whole = Subgraph::whole(&g);
        let c = whole.component_containing(g.node(2).unwrap()).unwrap();
        assert_eq!(ext(&g, c.members()), vec![1, 2, 3]);
        assert!(!whole.is_connected());
        let tri = induced_subgraph(&g, c.members().iter().copied()).unwrap();
        assert_eq!(tri.component_containing(tri.members()[0]).unwrap(), tri);
        assert!(c.component_containing(g.node(5).unwrap()).is_err());
    }
}
