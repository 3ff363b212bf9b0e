//! Compact CSR copy of a subgraph for the peeling-heavy phases.
//!
//! Local index `i` refers to `members[i]`; because members are sorted the
//! local order matches the global node order.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::graph::{NodeId, Subgraph};

pub(crate) struct LocalGraph {
    pub members: Vec<NodeId>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

impl LocalGraph {
    pub fn new(sub: &Subgraph<'_>) -> Self {
        let members = sub.members().to_vec();
        let parent = sub.parent();
        let mut offsets = Vec::with_capacity(members.len() + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for &v in &members {
            for (u, w) in parent.adj(v) {
                if let Ok(j) = members.binary_search(&u) {
                    targets.push(j as u32);
                    weights.push(w);
                }
            }
            offsets.push(targets.len());
        }
        LocalGraph { members, offsets, targets, weights }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn local(&self, v: NodeId) -> Option<usize> {
        self.members.binary_search(&v).ok()
    }

    #[inline]
    pub fn adj(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (lo, hi) = (self.offsets[i], self.offsets[i + 1]);
        self.targets[lo..hi].iter().map(|&t| t as usize).zip(self.weights[lo..hi].iter().copied())
    }

    pub fn degrees(&self, alive: &[bool]) -> Vec<usize> {
        (0..self.len())
            .map(|i| if alive[i] { self.adj(i).filter(|&(j, _)| alive[j]).count() } else { 0 })
            .collect()
    }

    /// Removes alive nodes of degree `< k` until none remain.
    pub fn peel(&self, alive: &mut [bool], k: usize) {
        let mut deg = self.degrees(alive);
        let mut queue: VecDeque<usize> = (0..self.len()).filter(|&i| alive[i] && deg[i] < k).collect();
        for &i in &queue {
            alive[i] = false;
        }
        while let Some(i) = queue.pop_front() {
            for (j, _) in self.adj(i) {
                if alive[j] {
                    deg[j] -= 1;
                    if deg[j] < k {
                        alive[j] = false;
                        queue.push_back(j);
                    }
                }
            }
        }
    }

    /// Alive nodes reachable from `start` through alive nodes.
    pub fn component(&self, alive: &[bool], start: usize) -> Vec<bool> {
        let mut seen = alloc::vec![false; self.len()];
        if !alive[start] {
            return seen;
        }
        let mut queue = VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            for (j, _) in self.adj(i) {
                if alive[j] && !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen
    }

    /// Peel to the k-core, then keep the component of `query[0]`. `None` if
    /// any query node is peeled or lands in another component.
    pub fn connected_kcore(&self, mut alive: Vec<bool>, query: &[usize], k: usize) -> Option<Vec<bool>> {
        self.peel(&mut alive, k);
        let &first = query.first()?;
        if query.iter().any(|&q| !alive[q]) {
            return None;
        }
        let comp = self.component(&alive, first);
        if query.iter().all(|&q| comp[q]) {
            Some(comp)
        } else {
            None
        }
    }

    /// Sum of weights over alive edges, in member order.
    pub fn weight(&self, alive: &[bool]) -> f64 {
        let mut total = 0.0;
        for i in 0..self.len() {
            if !alive[i] {
                continue;
            }
            for (j, w) in self.adj(i) {
                if j > i && alive[j] {
                    total += w;
                }
            }
        }
        total
    }

    pub fn select(&self, alive: &[bool]) -> Vec<NodeId> {
        self.members.iter().zip(alive).filter(|(_, &a)| a).map(|(&v, _)| v).collect()
    }
}
