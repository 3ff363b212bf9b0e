//! Seed trees connecting the query nodes inside the k-core.
//!
//! Two constructions are provided. [`build_tree_mst`] merges the pairwise
//! shortest paths among the query nodes and grows a Prim tree over that
//! union from the first query node. [`build_tree_path`] chains shortest
//! paths from each query node to the nearest one not yet reached. Both run
//! their searches inside `C_k` only and strip non-query leaves at the end.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::SearchError;
use crate::graph::{NodeId, WeightedGraph};
use crate::kcore::{require_in_core, CoreIndex};
use crate::paths::{dijkstra_sssp, nearest_target, CoreUniverse};

/// A tree over a subset of the graph's nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedTree {
    nodes: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId, f64)>,
    weight: f64,
}

impl SeedTree {
    pub fn singleton(q: NodeId) -> Self {
        SeedTree { nodes: alloc::vec![q], edges: Vec::new(), weight: 0.0 }
    }

    fn from_edges(edges: BTreeMap<(NodeId, NodeId), f64>, root: NodeId) -> Self {
        let mut nodes: BTreeSet<NodeId> = BTreeSet::new();
        nodes.insert(root);
        for &(u, v) in edges.keys() {
            nodes.insert(u);
            nodes.insert(v);
        }
        let edges: Vec<_> = edges.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        let weight = edges.iter().map(|e| e.2).sum();
        SeedTree { nodes: nodes.into_iter().collect(), edges, weight }
    }

    /// Sorted node set.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Edges as `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId, f64)] {
        &self.edges
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Connected, acyclic and spanning exactly `nodes`.
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.nodes.len() {
            return false;
        }
        let mut dsu = Dsu::default();
        for &(u, v, _) in &self.edges {
            if !dsu.union(u, v) {
                return false;
            }
        }
        let root = dsu.find(self.nodes[0]);
        self.nodes.iter().all(|&v| dsu.find(v) == root)
    }
}

fn key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn validate(g: &WeightedGraph, idx: &CoreIndex, query: &[NodeId], k: u32) -> Result<(), SearchError> {
    require_in_core(g, idx, query, k)?;
    let distinct: BTreeSet<_> = query.iter().collect();
    if distinct.len() != query.len() {
        return Err(SearchError::InvalidQuery("duplicate query node"));
    }
    Ok(())
}

/// Tree from pairwise shortest paths and a Prim scan over their union.
///
/// The Prim queue is keyed on single-edge weight and the scan stops once
/// every query node has been inserted.
pub fn build_tree_mst(g: &WeightedGraph, idx: &CoreIndex, query: &[NodeId], k: u32) -> Result<SeedTree, SearchError> {
    validate(g, idx, query, k)?;
    if query.len() == 1 {
        return Ok(SeedTree::singleton(query[0]));
    }
    let universe = CoreUniverse { graph: g, index: idx, k };

    // union of all pairwise shortest paths
    let mut pairwise: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
    for (i, &src) in query.iter().enumerate().take(query.len() - 1) {
        let rest = &query[i + 1..];
        let paths = dijkstra_sssp(&universe, src, rest)?;
        for &t in rest {
            let p = paths.get(&t).ok_or(SearchError::Disconnected(src, t))?;
            for (u, v, w) in p.edges(g) {
                pairwise.insert(key(u, v), w);
            }
        }
    }
    let mut adj: BTreeMap<NodeId, Vec<(NodeId, f64)>> = BTreeMap::new();
    for (&(u, v), &w) in &pairwise {
        adj.entry(u).or_default().push((v, w));
        adj.entry(v).or_default().push((u, w));
    }

    // Prim from q0 until all query nodes are in
    let q0 = query[0];
    let mut waiting: BTreeSet<NodeId> = query[1..].iter().copied().collect();
    let mut best: BTreeMap<NodeId, (f64, NodeId)> = BTreeMap::new();
    let mut in_tree: BTreeSet<NodeId> = BTreeSet::new();
    let mut heap = BinaryHeap::new();
    let mut tree: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
    heap.push(Cand { dist: 0.0, node: q0 });
    while let Some(Cand { node: v, .. }) = heap.pop() {
        if !in_tree.insert(v) {
            continue;
        }
        if let Some(&(w, parent)) = best.get(&v) {
            tree.insert(key(parent, v), w);
        }
        waiting.remove(&v);
        if waiting.is_empty() {
            break;
        }
        for &(u, w) in adj.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if in_tree.contains(&u) {
                continue;
            }
            if best.get(&u).is_none_or(|&(d, _)| w < d) {
                best.insert(u, (w, v));
                heap.push(Cand { dist: w, node: u });
            }
        }
    }
    debug_assert!(waiting.is_empty());
    strip_leaves(&mut tree, query);
    Ok(SeedTree::from_edges(tree, q0))
}

/// Tree from chaining nearest-query shortest paths, starting at `query[0]`.
///
/// Merged paths can close cycles; the union is reduced to its minimum
/// spanning tree, which drops the heaviest edge of every cycle.
pub fn build_tree_path(g: &WeightedGraph, idx: &CoreIndex, query: &[NodeId], k: u32) -> Result<SeedTree, SearchError> {
    validate(g, idx, query, k)?;
    if query.len() == 1 {
        return Ok(SeedTree::singleton(query[0]));
    }
    let universe = CoreUniverse { graph: g, index: idx, k };
    let mut anchor = query[0];
    let mut remaining: BTreeSet<NodeId> = query[1..].iter().copied().collect();
    let mut union: BTreeMap<(NodeId, NodeId), f64> = BTreeMap::new();
    while !remaining.is_empty() {
        let path = nearest_target(&universe, anchor, &remaining)?
            .ok_or_else(|| SearchError::Disconnected(anchor, *remaining.iter().next().unwrap()))?;
        for (u, v, w) in path.edges(g) {
            union.insert(key(u, v), w);
        }
        anchor = path.target;
        remaining.remove(&anchor);
    }

    let mut edges: Vec<((NodeId, NodeId), f64)> = union.into_iter().collect();
    edges.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut dsu = Dsu::default();
    let mut tree = BTreeMap::new();
    for ((u, v), w) in edges {
        if dsu.union(u, v) {
            tree.insert((u, v), w);
        }
    }
    strip_leaves(&mut tree, query);
    Ok(SeedTree::from_edges(tree, query[0]))
}

/// Repeatedly removes leaves that are not query nodes.
fn strip_leaves(tree: &mut BTreeMap<(NodeId, NodeId), f64>, query: &[NodeId]) {
    let keep: BTreeSet<NodeId> = query.iter().copied().collect();
    let mut adj: BTreeMap<NodeId, BTreeSet<NodeId>> = BTreeMap::new();
    for &(u, v) in tree.keys() {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    let mut leaves: Vec<NodeId> =
        adj.iter().filter(|(v, n)| n.len() == 1 && !keep.contains(v)).map(|(&v, _)| v).collect();
    while let Some(v) = leaves.pop() {
        let Some(nbrs) = adj.remove(&v) else { continue };
        for u in nbrs {
            tree.remove(&key(u, v));
            let n = adj.get_mut(&u).expect("neighbor present");
            n.remove(&v);
            if n.len() == 1 && !keep.contains(&u) {
                leaves.push(u);
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Cand {
    dist: f64,
    node: NodeId,
}

impl Eq for Cand {}

impl Ord for Cand {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Cand {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Default)]
struct Dsu {
    parent: BTreeMap<NodeId, NodeId>,
}

impl Dsu {
    fn find(&mut self, v: NodeId) -> NodeId {
        let mut root = v;
        while let Some(&p) = self.parent.get(&root) {
            if p == root {
                break;
            }
            root = p;
        }
        let mut cur = v;
        while cur != root {
            let next = *self.parent.get(&cur).unwrap_or(&root);
            self.parent.insert(cur, root);
            cur = next;
        }
        root
    }

    /// `false` if already joined.
    fn union(&mut self, a: NodeId, b: NodeId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent.insert(ra.max(rb), ra.min(rb));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::{GraphBuilder, Subgraph};
    use crate::kcore::{core_decompose, maximal_connected_kcore};
    use alloc::vec;
    use proptest::prelude::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ids(g: &WeightedGraph, xs: &[u64]) -> Vec<NodeId> {
        xs.iter().map(|&x| g.node(x).unwrap()).collect()
    }

    fn ext_edges(g: &WeightedGraph, t: &SeedTree) -> Vec<(u64, u64)> {
        t.edges().iter().map(|&(u, v, _)| (g.external_id(u), g.external_id(v))).collect()
    }

    #[test]
    fn six_ring_mst_tree_weighs_7() {
        let g = fixtures::six_ring();
        let idx = core_decompose(&g);
        let t = build_tree_mst(&g, &idx, &ids(&g, &[1, 2, 5]), 2).unwrap();
        assert!(t.is_tree());
        assert_eq!(t.weight(), 7.0);
        assert_eq!(ext_edges(&g, &t), vec![(1, 3), (2, 5), (3, 4), (4, 5)]);
    }

    #[test]
    fn six_ring_path_tree_merges_1_to_5_and_5_to_2() {
        let g = fixtures::six_ring();
        let idx = core_decompose(&g);
        let t = build_tree_path(&g, &idx, &ids(&g, &[1, 2, 5]), 2).unwrap();
        assert!(t.is_tree());
        // spath(1,5) = 1-3-4-5, spath(5,2) = 5-2
        assert_eq!(ext_edges(&g, &t), vec![(1, 3), (2, 5), (3, 4), (4, 5)]);
        assert_eq!(t.weight(), 7.0);
    }

    #[test]
    fn adjacent_pair_is_single_edge() {
        let g = fixtures::two_blocks();
        let idx = core_decompose(&g);
        let q = ids(&g, &[8, 10]);
        let a = build_tree_mst(&g, &idx, &q, 3).unwrap();
        let b = build_tree_path(&g, &idx, &q, 3).unwrap();
        assert_eq!(ext_edges(&g, &a), vec![(8, 10)]);
        assert_eq!(a, b);
    }

    #[test]
    fn singleton_and_errors() {
        let g = fixtures::two_blocks();
        let idx = core_decompose(&g);
        let t = build_tree_mst(&g, &idx, &ids(&g, &[9]), 3).unwrap();
        assert_eq!(t.nodes(), ids(&g, &[9]).as_slice());
        assert!(t.is_tree());

        let q = ids(&g, &[8, 5]);
        assert!(matches!(build_tree_path(&g, &idx, &q, 3), Err(SearchError::QueryNotInCore { .. })));
        let q = ids(&g, &[1, 8]);
        assert_eq!(build_tree_mst(&g, &idx, &q, 3), Err(SearchError::Disconnected(q[0], q[1])));
        assert_eq!(build_tree_path(&g, &idx, &q, 3), Err(SearchError::Disconnected(q[0], q[1])));
        let q = ids(&g, &[8, 8]);
        assert!(matches!(build_tree_path(&g, &idx, &q, 3), Err(SearchError::InvalidQuery(_))));
    }

    #[test]
    fn path_strategy_prunes_cycles() {
        // 1-2 and 2-3 direct, but 3 reaches 4 via 1 as well; union of chained
        // paths 1->2, 2->3 (via 9), 3->4 (via 1) closes a cycle
        let g = WeightedGraph::from_edges([
            (1, 2, 1.0),
            (2, 9, 1.0),
            (9, 3, 1.0),
            (3, 1, 2.5),
            (1, 4, 1.0),
            (3, 4, 5.0),
        ]);
        let idx = core_decompose(&g);
        let q = ids(&g, &[1, 2, 3, 4]);
        let t = build_tree_path(&g, &idx, &q, 1).unwrap();
        assert!(t.is_tree());
        assert!(q.iter().all(|v| t.nodes().contains(v)));
    }

    fn random_instance(seed: u64, n: u64, qn: usize) -> Option<(WeightedGraph, CoreIndex, Vec<NodeId>, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = GraphBuilder::new();
        for u in 0..n {
            b.add_node(u);
            for v in (u + 1)..n {
                if rng.gen_bool(0.25) {
                    b.add_edge(u, v, rng.gen_range(0.1..4.0)).unwrap();
                }
            }
        }
        let g = b.build();
        let idx = core_decompose(&g);
        let k = 2;
        let mut pool: Vec<NodeId> = g.nodes().filter(|&v| idx.coreness(v) >= k).collect();
        if pool.len() < qn {
            return None;
        }
        pool.shuffle(&mut rng);
        let root = pool[0];
        let comp = maximal_connected_kcore(&g, &idx, &[root], k).ok()?;
        let mut q: Vec<NodeId> = comp.members().to_vec();
        q.shuffle(&mut rng);
        q.truncate(qn);
        if q.len() < qn {
            return None;
        }
        Some((g, idx, q, k))
    }

    #[test]
    fn mst_edges_lie_on_query_pair_paths() {
        for seed in 0..60 {
            let Some((g, idx, q, k)) = random_instance(seed, 20, 3) else { continue };
            let t = build_tree_mst(&g, &idx, &q, k).unwrap();
            assert!(t.is_tree());
            let u = CoreUniverse { graph: &g, index: &idx, k };
            let mut on_paths = BTreeSet::new();
            for (i, &a) in q.iter().enumerate() {
                let p = dijkstra_sssp(&u, a, &q[i + 1..]).unwrap();
                for sp in p.values() {
                    for (x, y, _) in sp.edges(&g) {
                        on_paths.insert(key(x, y));
                    }
                }
            }
            for &(x, y, _) in t.edges() {
                assert!(on_paths.contains(&(x, y)), "seed {seed}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn trees_are_feasible_and_deterministic(seed in any::<u64>(), qn in 2usize..5) {
            if let Some((g, idx, q, k)) = random_instance(seed, 20, qn) {
                let mst = build_tree_mst(&g, &idx, &q, k).unwrap();
                let path = build_tree_path(&g, &idx, &q, k).unwrap();
                for t in [&mst, &path] {
                    prop_assert!(t.is_tree());
                    prop_assert!(q.iter().all(|v| t.nodes().binary_search(v).is_ok()));
                    prop_assert!(t.nodes().iter().all(|&v| idx.coreness(v) >= k));
                    for &(u, v, w) in t.edges() {
                        prop_assert_eq!(g.edge_weight(u, v), Some(w));
                    }
                }
                prop_assert_eq!(&mst, &build_tree_mst(&g, &idx, &q, k).unwrap());
                prop_assert_eq!(&path, &build_tree_path(&g, &idx, &q, k).unwrap());
                if qn == 2 {
                    prop_assert_eq!(mst.weight(), path.weight());
                    let sp = dijkstra_sssp(&Subgraph::whole(&g), q[0], &q[1..2]);
                    prop_assert!(sp.unwrap()[&q[1]].weight <= mst.weight() + 1e-12);
                }
            }
        }
    }
}
