//! Level-by-level growth of a seed tree into a connected k-core.

use alloc::vec::Vec;

use crate::error::SearchError;
use crate::graph::{NodeId, Subgraph, WeightedGraph};
use crate::kcore::{connected_kcore_containing, require_in_core, CoreIndex};

/// Outcome of a successful expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion<'g> {
    /// Connected k-core containing the query, carved out of the explored set.
    pub candidate: Subgraph<'g>,
    /// Number of expansion levels performed before success.
    pub l_max: usize,
    /// `|L_0|, |L_1|, ...` for every level built.
    pub level_sizes: Vec<usize>,
    /// `|L'|` after each attempt, starting with the seed.
    pub explored_sizes: Vec<usize>,
}

/// Expands `seed` through `C_k` one neighborhood level at a time.
///
/// Before each new level the explored set `L'` is peeled to its k-core and
/// the component holding the query is taken; the first attempt that keeps
/// every query node together wins. The seed itself is tried at depth 0.
/// Only neighbors with coreness `>= k` are ever enqueued.
pub fn expand_to_kcore<'g>(
    g: &'g WeightedGraph,
    idx: &CoreIndex,
    query: &[NodeId],
    k: u32,
    seed: &[NodeId],
    max_depth: Option<usize>,
) -> Result<Expansion<'g>, SearchError> {
    require_in_core(g, idx, query, k)?;
    require_in_core(g, idx, seed, k)?;
    let mut in_explored = alloc::vec![false; g.node_count()];
    let mut explored: Vec<NodeId> = seed.to_vec();
    explored.sort_unstable();
    explored.dedup();
    for v in &explored {
        in_explored[v.index()] = true;
    }
    if !query.iter().all(|q| in_explored[q.index()]) {
        return Err(SearchError::InfeasibleInput("query nodes missing from seed"));
    }

    let mut frontier = explored.clone();
    let mut level_sizes = alloc::vec![frontier.len()];
    let mut explored_sizes = Vec::new();
    let mut depth = 0;
    loop {
        explored_sizes.push(explored.len());
        let candidate_set = Subgraph::from_sorted(g, explored.clone());
        if let Some(candidate) = connected_kcore_containing(&candidate_set, query, k) {
            return Ok(Expansion { candidate, l_max: depth, level_sizes, explored_sizes });
        }
        if max_depth.is_some_and(|d| depth >= d) {
            return Err(SearchError::DepthExceeded(depth));
        }

        let mut next = Vec::new();
        for &v in &frontier {
            for (u, _) in g.adj(v) {
                if idx.coreness(u) >= k && !core::mem::replace(&mut in_explored[u.index()], true) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            // explored set is the whole k-core component and still fails
            return Err(SearchError::QuerySplit);
        }
        next.sort_unstable();
        explored.extend_from_slice(&next);
        explored.sort_unstable();
        frontier = next;
        level_sizes.push(frontier.len());
        depth += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::GraphBuilder;
    use crate::kcore::{core_decompose, maximal_connected_kcore};
    use crate::seed_tree::build_tree_path;
    use alloc::vec;
    use proptest::prelude::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ids(g: &WeightedGraph, xs: &[u64]) -> Vec<NodeId> {
        xs.iter().map(|&x| g.node(x).unwrap()).collect()
    }

    #[test]
    fn two_blocks_one_level_suffices() {
        let g = fixtures::two_blocks();
        let idx = core_decompose(&g);
        let q = ids(&g, &[8, 10]);
        let e = expand_to_kcore(&g, &idx, &q, 3, &q, None).unwrap();
        assert_eq!(e.l_max, 1);
        assert_eq!(e.explored_sizes, vec![2, 5]);
        assert_eq!(e.candidate.members(), ids(&g, &[8, 9, 10, 11]).as_slice());
        assert_eq!(e.candidate.weight(), 13.0);
    }

    #[test]
    fn seed_that_is_already_a_core_is_returned_at_depth_zero() {
        let g = fixtures::two_blocks();
        let idx = core_decompose(&g);
        let q = ids(&g, &[8]);
        let seed = ids(&g, &[8, 9, 10, 11]);
        let e = expand_to_kcore(&g, &idx, &q, 3, &seed, None).unwrap();
        assert_eq!(e.l_max, 0);
        assert_eq!(e.candidate.members(), seed.as_slice());
    }

    #[test]
    fn depth_limit_and_bad_seed() {
        let g = fixtures::two_blocks();
        let idx = core_decompose(&g);
        let q = ids(&g, &[8, 10]);
        assert_eq!(expand_to_kcore(&g, &idx, &q, 3, &q, Some(0)), Err(SearchError::DepthExceeded(0)));
        assert!(matches!(
            expand_to_kcore(&g, &idx, &q, 3, &ids(&g, &[8]), None),
            Err(SearchError::InfeasibleInput(_))
        ));
        assert!(matches!(
            expand_to_kcore(&g, &idx, &ids(&g, &[8]), 3, &ids(&g, &[8, 5]), None),
            Err(SearchError::QueryNotInCore { .. })
        ));
    }

    #[test]
    fn never_leaves_the_kcore() {
        let g = fixtures::two_blocks();
        let idx = core_decompose(&g);
        // node 6 neighbors node 5 (coreness 2); a 3-core expansion from 6 must skip it
        let q = ids(&g, &[6]);
        let e = expand_to_kcore(&g, &idx, &q, 3, &q, None).unwrap();
        assert!(!e.candidate.contains(g.node(5).unwrap()));
        assert!(e.candidate.is_connected_kcore_containing(&q, 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn expansion_output_is_feasible_and_local(seed in any::<u64>(), k in 1u32..4, qn in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut b = GraphBuilder::new();
            for u in 0..30u64 {
                b.add_node(u);
                for v in (u + 1)..30 {
                    if rng.gen_bool(0.15) {
                        b.add_edge(u, v, rng.gen_range(0.1..3.0)).unwrap();
                    }
                }
            }
            let g = b.build();
            let idx = core_decompose(&g);
            let pool: Vec<NodeId> = g.nodes().filter(|&v| idx.coreness(v) >= k).collect();
            prop_assume!(!pool.is_empty());
            let root = *pool.choose(&mut rng).unwrap();
            let comp = maximal_connected_kcore(&g, &idx, &[root], k).unwrap();
            let mut q = comp.members().to_vec();
            q.shuffle(&mut rng);
            q.truncate(qn);
            let tree = build_tree_path(&g, &idx, &q, k).unwrap();
            let e = expand_to_kcore(&g, &idx, &q, k, tree.nodes(), None).unwrap();
            prop_assert!(e.candidate.is_connected_kcore_containing(&q, k));
            prop_assert!(e.candidate.members().iter().all(|&v| comp.contains(v)));
            prop_assert!(e.explored_sizes.windows(2).all(|w| w[0] < w[1]));
            let again = expand_to_kcore(&g, &idx, &q, k, tree.nodes(), None).unwrap();
            prop_assert_eq!(e, again);
        }
    }
}
