//! Single-source shortest paths restricted to a node universe.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::GraphError;
use crate::graph::{NodeId, Subgraph, WeightedGraph};
use crate::kcore::CoreIndex;

/// Node set a search may traverse.
pub trait Universe {
    fn graph(&self) -> &WeightedGraph;
    fn contains(&self, v: NodeId) -> bool;
}

impl Universe for Subgraph<'_> {
    fn graph(&self) -> &WeightedGraph {
        self.parent()
    }

    fn contains(&self, v: NodeId) -> bool {
        Subgraph::contains(self, v)
    }
}

/// The k-core `C_k` as a universe, tested through the coreness index.
#[derive(Clone, Copy)]
pub struct CoreUniverse<'a> {
    pub graph: &'a WeightedGraph,
    pub index: &'a CoreIndex,
    pub k: u32,
}

impl Universe for CoreUniverse<'_> {
    fn graph(&self) -> &WeightedGraph {
        self.graph
    }

    #[inline]
    fn contains(&self, v: NodeId) -> bool {
        self.index.coreness(v) >= self.k
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPath {
    pub source: NodeId,
    pub target: NodeId,
    /// `source ..= target`
    pub nodes: Vec<NodeId>,
    pub weight: f64,
}

impl ShortestPath {
    pub fn edges<'a>(&'a self, g: &'a WeightedGraph) -> impl Iterator<Item = (NodeId, NodeId, f64)> + 'a {
        self.nodes.windows(2).map(move |p| (p[0], p[1], g.edge_weight(p[0], p[1]).expect("path edge")))
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    node: NodeId,
}

impl Eq for Entry {}

impl Ord for Entry {
    // reversed: BinaryHeap is a max-heap, we pop the smallest (dist, node)
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Search<'u, U: Universe> {
    universe: &'u U,
    source: NodeId,
    // dense per-node state; `pred` of an unreached node is `None`
    dist: Vec<f64>,
    pred: Vec<Option<NodeId>>,
    settled: Vec<bool>,
    heap: BinaryHeap<Entry>,
}

impl<'u, U: Universe> Search<'u, U> {
    fn new(universe: &'u U, source: NodeId) -> Result<Self, GraphError> {
        let g = universe.graph();
        if !g.contains(source) || !universe.contains(source) {
            return Err(GraphError::UnknownNode(source));
        }
        let n = g.node_count();
        let mut s = Search {
            universe,
            source,
            dist: vec![f64::INFINITY; n],
            pred: vec![None; n],
            settled: vec![false; n],
            heap: BinaryHeap::new(),
        };
        s.dist[source.index()] = 0.0;
        s.heap.push(Entry { dist: 0.0, node: source });
        Ok(s)
    }

    /// Settles and returns the next closest node.
    fn step(&mut self) -> Option<NodeId> {
        let g = self.universe.graph();
        while let Some(Entry { dist, node }) = self.heap.pop() {
            if core::mem::replace(&mut self.settled[node.index()], true) {
                continue;
            }
            for (u, w) in g.adj(node) {
                let i = u.index();
                if self.settled[i] || !self.universe.contains(u) {
                    continue;
                }
                let nd = dist + w;
                let old = self.dist[i];
                if nd < old {
                    self.dist[i] = nd;
                    self.pred[i] = Some(node);
                    self.heap.push(Entry { dist: nd, node: u });
                } else if nd == old && self.pred[i].is_some_and(|p| node < p) {
                    // equal-weight alternative: keep the smaller predecessor
                    self.pred[i] = Some(node);
                }
            }
            return Some(node);
        }
        None
    }

    fn path_to(&self, target: NodeId) -> ShortestPath {
        let mut nodes = vec![target];
        let mut cur = target;
        while cur != self.source {
            cur = self.pred[cur.index()].expect("settled node has a predecessor");
            nodes.push(cur);
        }
        nodes.reverse();
        ShortestPath { source: self.source, target, nodes, weight: self.dist[target.index()] }
    }
}

/// Minimum-weight paths from `source` to each reachable target, staying
/// inside `universe`. Unreachable targets are absent from the map.
///
/// When two relaxations reach a node with equal weight the predecessor with
/// the smaller id wins, so results are deterministic.
pub fn dijkstra_sssp<U: Universe>(
    universe: &U,
    source: NodeId,
    targets: &[NodeId],
) -> Result<BTreeMap<NodeId, ShortestPath>, GraphError> {
    if let Some(&t) = targets.iter().find(|&&t| !universe.graph().contains(t)) {
        return Err(GraphError::UnknownNode(t));
    }
    let mut search = Search::new(universe, source)?;
    let mut pending: BTreeSet<NodeId> = targets.iter().copied().collect();
    let mut out = BTreeMap::new();
    while !pending.is_empty() {
        let Some(v) = search.step() else { break };
        if pending.remove(&v) {
            out.insert(v, search.path_to(v));
        }
    }
    Ok(out)
}

/// The target closest to `source` (ties: smaller id), or `None` if no target
/// is reachable. Stops as soon as the first target is settled.
pub fn nearest_target<U: Universe>(
    universe: &U,
    source: NodeId,
    targets: &BTreeSet<NodeId>,
) -> Result<Option<ShortestPath>, GraphError> {
    let mut search = Search::new(universe, source)?;
    while let Some(v) = search.step() {
        if targets.contains(&v) {
            return Ok(Some(search.path_to(v)));
        }
    }
    Ok(None)
}
