//! Shrinking a feasible candidate by node deletion.
//!
//! Each round protects the query nodes and everything they depend on
//! ([`protected_closure`]), scores the remaining nodes by their incident
//! weight, deletes the heaviest batch, and re-peels to the connected k-core
//! around the query. A deletion that breaks feasibility is retried with half
//! the batch; a failing batch of one ends the run.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::SearchError;
use crate::graph::{NodeId, Subgraph};
use crate::local::LocalGraph;

/// How many nodes a round deletes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RefineMode {
    /// `ceil(epsilon * r)` of the `r` unprotected nodes (ICG-M).
    #[default]
    Bulk,
    /// Exactly one node (ICG-S).
    Single,
}

/// Node score used to pick deletions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scorer {
    /// Sum of incident induced edge weights.
    #[default]
    Sum,
    /// Largest incident induced edge weight.
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineConfig {
    pub epsilon: f64,
    pub mode: RefineMode,
    pub scorer: Scorer,
    /// Keep a [`RefineStep`] per accepted round.
    pub record_trace: bool,
}

impl Default for RefineConfig {
    fn default() -> Self {
        RefineConfig { epsilon: 0.1, mode: RefineMode::Bulk, scorer: Scorer::Sum, record_trace: false }
    }
}

impl RefineConfig {
    pub fn bulk(epsilon: f64) -> Result<Self, SearchError> {
        let cfg = RefineConfig { epsilon, ..Self::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn single() -> Self {
        RefineConfig { mode: RefineMode::Single, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.epsilon > 0.0 && self.epsilon < 1.0 {
            Ok(())
        } else {
            Err(SearchError::InvalidQuery("epsilon must lie in (0, 1)"))
        }
    }

    fn batch(&self, removable: usize) -> usize {
        match self.mode {
            RefineMode::Single => 1,
            RefineMode::Bulk => {
                let x = self.epsilon * removable as f64;
                let floor = x as usize;
                let ceil = if (floor as f64) < x { floor + 1 } else { floor };
                ceil.clamp(1, removable.max(1))
            }
        }
    }
}

/// Nodes that must not be deleted: the query plus, for every protected node
/// of induced degree exactly `k`, all of its neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtectedSet {
    members: Vec<NodeId>,
}

impl ProtectedSet {
    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Fixpoint of the protection rule over `candidate`.
pub fn protected_closure(candidate: &Subgraph<'_>, query: &[NodeId], k: u32) -> ProtectedSet {
    let local = LocalGraph::new(candidate);
    let alive = alloc::vec![true; local.len()];
    let q: Vec<usize> = query.iter().filter_map(|&v| local.local(v)).collect();
    let mask = closure_mask(&local, &alive, &local.degrees(&alive), &q, k as usize);
    ProtectedSet { members: local.select(&mask) }
}

fn closure_mask(local: &LocalGraph, alive: &[bool], deg: &[usize], query: &[usize], k: usize) -> Vec<bool> {
    let mut protected = alloc::vec![false; local.len()];
    let mut queue = VecDeque::new();
    for &q in query {
        if alive[q] && !protected[q] {
            protected[q] = true;
            queue.push_back(q);
        }
    }
    while let Some(p) = queue.pop_front() {
        if deg[p] != k {
            continue;
        }
        for (u, _) in local.adj(p) {
            if alive[u] && !protected[u] {
                protected[u] = true;
                queue.push_back(u);
            }
        }
    }
    protected
}

/// One accepted deletion round.
#[derive(Debug, Clone, PartialEq)]
pub struct RefineStep {
    pub before: Vec<NodeId>,
    pub protected: Vec<NodeId>,
    /// Nodes chosen by score, before re-peeling.
    pub deleted: Vec<NodeId>,
    pub after: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refinement<'g> {
    pub group: Subgraph<'g>,
    pub weight: f64,
    /// Accepted deletion rounds.
    pub iterations: usize,
    /// Candidate size after every accepted round, starting with the input.
    pub sizes: Vec<usize>,
    pub weights: Vec<f64>,
    pub trace: Vec<RefineStep>,
}

/// Shrinks `candidate`, which must be a connected k-core containing `query`.
pub fn refine<'g>(
    candidate: &Subgraph<'g>,
    query: &[NodeId],
    k: u32,
    cfg: &RefineConfig,
) -> Result<Refinement<'g>, SearchError> {
    cfg.validate()?;
    if query.is_empty() {
        return Err(SearchError::InvalidQuery("empty query set"));
    }
    if !candidate.is_connected_kcore_containing(query, k) {
        return Err(SearchError::InfeasibleInput("candidate is not a connected k-core containing the query"));
    }
    let local = LocalGraph::new(candidate);
    let q: Vec<usize> = query.iter().map(|&v| local.local(v).expect("query in candidate")).collect();
    let k = k as usize;

    let mut alive = alloc::vec![true; local.len()];
    let mut weight = local.weight(&alive);
    let mut sizes = alloc::vec![local.len()];
    let mut weights = alloc::vec![weight];
    let mut trace = Vec::new();

    loop {
        let deg = local.degrees(&alive);
        let protected = closure_mask(&local, &alive, &deg, &q, k);
        let mut scored: Vec<(f64, usize)> = (0..local.len())
            .filter(|&i| alive[i] && !protected[i])
            .map(|i| {
                let incident = local.adj(i).filter(|&(j, _)| alive[j]).map(|(_, w)| w);
                let score = match cfg.scorer {
                    Scorer::Sum => incident.sum(),
                    Scorer::Max => incident.fold(0.0, f64::max),
                };
                (score, i)
            })
            .collect();
        if scored.is_empty() {
            break;
        }
        // heaviest first, ties delete the larger id first
        scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.cmp(&a.1)));

        let mut batch = cfg.batch(scored.len());
        let accepted = loop {
            let mut trial = alive.clone();
            for &(_, i) in &scored[..batch] {
                trial[i] = false;
            }
            if let Some(next) = local.connected_kcore(trial, &q, k) {
                let w = local.weight(&next);
                if w < weight {
                    break Some((next, w, batch));
                }
            }
            if batch == 1 {
                break None;
            }
            batch /= 2;
        };
        let Some((next, w, batch)) = accepted else { break };

        if cfg.record_trace {
            let mut deleted: Vec<NodeId> = scored[..batch].iter().map(|&(_, i)| local.members[i]).collect();
            deleted.sort_unstable();
            trace.push(RefineStep {
                before: local.select(&alive),
                protected: local.select(&protected),
                deleted,
                after: local.select(&next),
            });
        }
        alive = next;
        weight = w;
        sizes.push(alive.iter().filter(|&&a| a).count());
        weights.push(weight);
    }

    let group = Subgraph::from_sorted(candidate.parent(), local.select(&alive));
    Ok(Refinement { group, weight, iterations: sizes.len() - 1, sizes, weights, trace })
}
