//! Query entry points: the local exploration pipeline and the global
//! baselines, all sharing one refinement implementation.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::SearchError;
use crate::expansion::expand_to_kcore;
use crate::graph::{NodeId, Subgraph, WeightedGraph};
use crate::kcore::{maximal_connected_kcore, CoreIndex};
use crate::refinement::{refine, RefineConfig, RefineMode, RefineStep};
use crate::seed_tree::{build_tree_mst, build_tree_path, SeedTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strategy {
    /// Local exploration seeded by the pairwise-path Prim tree.
    TreeMst,
    /// Local exploration seeded by chained nearest-query paths.
    TreePath,
    /// Maximal connected k-core shrunk by bulk deletion.
    GlobalIcgm,
    /// Maximal connected k-core shrunk one node at a time.
    GlobalIcgs,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::TreeMst, Strategy::TreePath, Strategy::GlobalIcgm, Strategy::GlobalIcgs];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::TreeMst => "tree-mst",
            Strategy::TreePath => "tree-path",
            Strategy::GlobalIcgm => "global-icgm",
            Strategy::GlobalIcgs => "global-icgs",
        }
    }

    pub fn is_local(self) -> bool {
        matches!(self, Strategy::TreeMst | Strategy::TreePath)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or(SearchError::InvalidQuery("unknown strategy"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuerySpec {
    /// Query nodes; order matters for the chained-path tree.
    pub query: Vec<NodeId>,
    pub k: u32,
    pub strategy: Strategy,
    pub refine: RefineConfig,
    pub max_depth: Option<usize>,
}

impl QuerySpec {
    pub fn new(query: Vec<NodeId>, k: u32, strategy: Strategy) -> Self {
        QuerySpec { query, k, strategy, refine: RefineConfig::default(), max_depth: None }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.query.is_empty() {
            return Err(SearchError::InvalidQuery("empty query set"));
        }
        if self.k == 0 {
            return Err(SearchError::InvalidQuery("k must be at least 1"));
        }
        let mut sorted = self.query.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(SearchError::InvalidQuery("duplicate query node"));
        }
        self.refine.validate()
    }
}

/// Millisecond clock used for per-phase timings.
pub trait Clock {
    fn now_ms(&self) -> f64;
}

/// Clock that always reads zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_ms(&self) -> f64 {
        0.0
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchStats {
    pub tree_ms: f64,
    pub expand_ms: f64,
    pub refine_ms: f64,
    /// Accepted refinement rounds.
    pub iterations: usize,
    /// Expansion levels; zero for the global baselines.
    pub l_max: usize,
    /// Candidate size at iteration 0, 1, ...
    pub sizes: Vec<usize>,
    pub weights: Vec<f64>,
    pub tree_skipped: bool,
    /// Expansion hit `max_depth` and the full component was used instead.
    pub depth_fallback: bool,
}

impl SearchStats {
    pub fn total_ms(&self) -> f64 {
        self.tree_ms + self.expand_ms + self.refine_ms
    }

    pub fn initial_size(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn final_size(&self) -> usize {
        self.sizes.last().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupResult<'g> {
    pub subgraph: Subgraph<'g>,
    pub weight: f64,
    pub feasible: bool,
    /// Why the query failed, when `feasible` is false.
    pub failure: Option<SearchError>,
    pub stats: SearchStats,
    pub trace: Vec<RefineStep>,
}

impl<'g> GroupResult<'g> {
    fn failed(g: &'g WeightedGraph, err: SearchError, stats: SearchStats) -> Self {
        GroupResult { subgraph: Subgraph::empty(g), weight: 0.0, feasible: false, failure: Some(err), stats, trace: Vec::new() }
    }
}

/// Runs `spec.strategy` without timing.
pub fn search<'g>(g: &'g WeightedGraph, idx: &CoreIndex, spec: &QuerySpec) -> GroupResult<'g> {
    search_with_clock(g, idx, spec, &NoClock)
}

pub fn search_with_clock<'g, C: Clock>(g: &'g WeightedGraph, idx: &CoreIndex, spec: &QuerySpec, clock: &C) -> GroupResult<'g> {
    if spec.strategy.is_local() {
        leks_with_clock(g, idx, spec, clock)
    } else {
        baseline_with_clock(g, idx, spec, clock)
    }
}

/// Local exploration: seed tree, level-wise expansion, refinement.
///
/// Infeasible queries come back with `feasible == false` and the reason in
/// `failure`.
pub fn leks_search<'g>(g: &'g WeightedGraph, idx: &CoreIndex, spec: &QuerySpec) -> GroupResult<'g> {
    leks_with_clock(g, idx, spec, &NoClock)
}

/// Global baseline: maximal connected k-core, then bulk or single deletion.
pub fn global_baseline<'g>(g: &'g WeightedGraph, idx: &CoreIndex, spec: &QuerySpec) -> GroupResult<'g> {
    baseline_with_clock(g, idx, spec, &NoClock)
}

fn leks_with_clock<'g, C: Clock>(g: &'g WeightedGraph, idx: &CoreIndex, spec: &QuerySpec, clock: &C) -> GroupResult<'g> {
    let mut stats = SearchStats::default();
    if let Err(e) = spec.validate() {
        return GroupResult::failed(g, e, stats);
    }
    if !spec.strategy.is_local() {
        return GroupResult::failed(g, SearchError::InvalidQuery("local search needs a tree strategy"), stats);
    }
    let (q, k) = (spec.query.as_slice(), spec.k);

    let t0 = clock.now_ms();
    let tree = match (spec.strategy, q.len()) {
        (_, 1) => {
            stats.tree_skipped = true;
            crate::kcore::require_in_core(g, idx, q, k).map(|_| SeedTree::singleton(q[0]))
        }
        (Strategy::TreeMst, _) => build_tree_mst(g, idx, q, k),
        _ => build_tree_path(g, idx, q, k),
    };
    let t1 = clock.now_ms();
    if !stats.tree_skipped {
        stats.tree_ms = t1 - t0;
    }
    let tree = match tree {
        Ok(t) => t,
        Err(e) => return GroupResult::failed(g, e, stats),
    };

    let candidate = match expand_to_kcore(g, idx, q, k, tree.nodes(), spec.max_depth) {
        Ok(e) => {
            stats.l_max = e.l_max;
            Ok(e.candidate)
        }
        Err(SearchError::DepthExceeded(d)) => {
            stats.l_max = d;
            stats.depth_fallback = true;
            maximal_connected_kcore(g, idx, q, k)
        }
        Err(e) => Err(e),
    };
    let t2 = clock.now_ms();
    stats.expand_ms = t2 - t1;
    let candidate = match candidate {
        Ok(c) => c,
        Err(e) => return GroupResult::failed(g, e, stats),
    };

    finish(g, candidate, q, k, &spec.refine, stats, clock, t2)
}

fn baseline_with_clock<'g, C: Clock>(g: &'g WeightedGraph, idx: &CoreIndex, spec: &QuerySpec, clock: &C) -> GroupResult<'g> {
    let mut stats = SearchStats { tree_skipped: true, ..SearchStats::default() };
    if let Err(e) = spec.validate() {
        return GroupResult::failed(g, e, stats);
    }
    let mode = match spec.strategy {
        Strategy::GlobalIcgm => RefineMode::Bulk,
        Strategy::GlobalIcgs => RefineMode::Single,
        _ => return GroupResult::failed(g, SearchError::InvalidQuery("baseline needs a global strategy"), stats),
    };
    let (q, k) = (spec.query.as_slice(), spec.k);
    let t0 = clock.now_ms();
    let candidate = maximal_connected_kcore(g, idx, q, k);
    let t1 = clock.now_ms();
    stats.expand_ms = t1 - t0;
    let candidate = match candidate {
        Ok(c) => c,
        Err(e) => return GroupResult::failed(g, e, stats),
    };
    let cfg = RefineConfig { mode, ..spec.refine };
    finish(g, candidate, q, k, &cfg, stats, clock, t1)
}

#[allow(clippy::too_many_arguments)]
fn finish<'g, C: Clock>(
    g: &'g WeightedGraph,
    candidate: Subgraph<'g>,
    q: &[NodeId],
    k: u32,
    cfg: &RefineConfig,
    mut stats: SearchStats,
    clock: &C,
    start: f64,
) -> GroupResult<'g> {
    let refined = refine(&candidate, q, k, cfg);
    stats.refine_ms = clock.now_ms() - start;
    match refined {
        Ok(r) => {
            stats.iterations = r.iterations;
            stats.sizes = r.sizes;
            stats.weights = r.weights;
            GroupResult { subgraph: r.group, weight: r.weight, feasible: true, failure: None, stats, trace: r.trace }
        }
        Err(e) => GroupResult::failed(g, e, stats),
    }
}
