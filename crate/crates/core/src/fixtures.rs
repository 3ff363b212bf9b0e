//! Hand-encoded example graphs shared by unit tests.

use crate::graph::WeightedGraph;

/// Twelve nodes, twenty edges. The 3-core splits into a K4 on {1,2,3,4}
/// (weight 15) and a seven-node block on {6..12}; node 5 bridges them with
/// degree 2. The cheapest connected 3-core holding {8,10} is the K4 on
/// {8,9,10,11} with weight 13.
pub fn two_blocks() -> WeightedGraph {
    WeightedGraph::from_edges(TWO_BLOCKS_EDGES.iter().copied())
}

pub const TWO_BLOCKS_EDGES: [(u64, u64, f64); 20] = [
    (1, 2, 3.0),
    (1, 3, 5.0),
    (1, 4, 2.0),
    (2, 3, 1.0),
    (2, 4, 3.0),
    (3, 4, 1.0),
    (4, 5, 2.0),
    (5, 6, 2.0),
    (8, 9, 2.0),
    (8, 10, 1.0),
    (8, 11, 3.0),
    (9, 10, 2.0),
    (9, 11, 3.0),
    (10, 11, 2.0),
    (6, 7, 5.0),
    (6, 12, 6.0),
    (7, 12, 5.0),
    (6, 8, 4.0),
    (7, 9, 4.0),
    (11, 12, 4.0),
];

/// Six nodes, eight edges, a 2-core. Shortest paths among {1,2,5}:
/// 1-3-2, 1-3-4-5 and 2-5; node 5 is nearer to 1 than node 2 is.
pub fn six_ring() -> WeightedGraph {
    WeightedGraph::from_edges([
        (1, 3, 1.0),
        (3, 2, 5.0),
        (3, 4, 1.0),
        (4, 5, 1.0),
        (2, 5, 4.0),
        (1, 6, 5.0),
        (6, 4, 5.0),
        (1, 2, 7.0),
    ])
}
