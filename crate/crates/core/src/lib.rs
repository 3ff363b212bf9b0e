//! Intimate-core group search over weighted undirected graphs.
//!
//! Given query nodes `Q` and an integer `k`, an intimate-core group is a
//! connected k-core containing every query node whose total edge weight is
//! as small as possible. The problem is NP-hard, so this crate provides
//! heuristics:
//!
//! * a local exploration pipeline that connects `Q` with a small-weight seed
//!   tree inside the k-core ([`seed_tree`]), grows the tree level by level
//!   into a connected k-core ([`expansion`]) and shrinks that candidate by
//!   node deletion ([`refinement`]);
//! * the global baselines that start from the maximal connected k-core
//!   containing `Q` and shrink it with single or bulk deletion ([`search`]);
//! * a brute-force reference solver for toy graphs ([`oracle`]).
//!
//! Coreness values are computed once per graph ([`kcore::core_decompose`])
//! and reused by every query.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and
//! the command line live in the companion `icgroup` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod expansion;
pub mod graph;
pub mod kcore;
mod local;
pub mod oracle;
pub mod paths;
pub mod refinement;
pub mod search;
pub mod seed_tree;

#[cfg(test)]
mod fixtures;

pub use error::{GraphError, SearchError};
pub use expansion::{expand_to_kcore, Expansion};
pub use graph::{group_weight, induced_subgraph, BuildReport, GraphBuilder, NodeId, Subgraph, WeightedGraph};
pub use kcore::{connected_kcore_containing, core_decompose, kcore_of, maximal_connected_kcore, CoreIndex};
pub use oracle::{oracle_min_group, OracleError, OracleGroup, MAX_ORACLE_NODES};
pub use paths::{dijkstra_sssp, CoreUniverse, ShortestPath, Universe};
pub use refinement::{protected_closure, refine, ProtectedSet, RefineConfig, RefineMode, RefineStep, Refinement, Scorer};
pub use search::{
    global_baseline, leks_search, search, search_with_clock, Clock, GroupResult, NoClock, QuerySpec, SearchStats,
    Strategy,
};
pub use seed_tree::{build_tree_mst, build_tree_path, SeedTree};
