//! Seeded query workloads for the benchmark protocols.

use std::fmt;
use std::str::FromStr;

use icgroup_core::{CoreIndex, WeightedGraph};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const DEFAULT_QUERIES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    /// k in {2, 4, 6, 8} with |Q| = 3.
    VaryK,
    /// |Q| in 1..=7 with k = 4.
    VaryQ,
    /// k = 6, |Q| = 5; the per-iteration series is the point of interest.
    Iterations,
}

impl Protocol {
    pub fn name(self) -> &'static str {
        match self {
            Protocol::VaryK => "vary-k",
            Protocol::VaryQ => "vary-q",
            Protocol::Iterations => "iterations",
        }
    }

    /// `(k, |Q|)` settings swept by the protocol.
    pub fn settings(self) -> Vec<(u32, usize)> {
        match self {
            Protocol::VaryK => [2, 4, 6, 8].map(|k| (k, 3)).to_vec(),
            Protocol::VaryQ => (1..=7).map(|q| (4, q)).collect(),
            Protocol::Iterations => vec![(6, 5)],
        }
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Protocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Protocol::VaryK, Protocol::VaryQ, Protocol::Iterations]
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown protocol {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkloadQuery {
    pub id: usize,
    pub k: u32,
    /// External node ids.
    pub query: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workload {
    pub protocol: Protocol,
    pub seed: u64,
    pub per_setting: usize,
    pub queries: Vec<WorkloadQuery>,
}

impl Workload {
    /// Draws `per_setting` queries for each setting of `protocol`.
    ///
    /// Query nodes are sampled uniformly without replacement from the nodes
    /// of coreness at least k. When that pool is smaller than |Q| the whole
    /// node set is used instead, and the query is expected to be infeasible.
    pub fn generate(g: &WeightedGraph, idx: &CoreIndex, protocol: Protocol, seed: u64, per_setting: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all: Vec<u64> = g.nodes().map(|v| g.external_id(v)).collect();
        let mut queries = Vec::new();
        for (k, size) in protocol.settings() {
            let core: Vec<u64> = g.nodes().filter(|&v| idx.coreness(v) >= k).map(|v| g.external_id(v)).collect();
            let pool = if core.len() >= size { &core } else { &all };
            for _ in 0..per_setting {
                let take = size.min(pool.len());
                let query = sample(&mut rng, pool.len(), take).into_iter().map(|i| pool[i]).collect();
                queries.push(WorkloadQuery { id: queries.len(), k, query });
            }
        }
        Workload { protocol, seed, per_setting, queries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use icgroup_core::core_decompose;

    fn graph() -> WeightedGraph {
        let mut edges = Vec::new();
        for u in 0..12u64 {
            for v in (u + 1)..12 {
                if (u + v) % 3 != 0 {
                    edges.push((u, v, 1.0));
                }
            }
        }
        edges.extend((12..40u64).map(|i| (i, i + 1, 1.0)));
        WeightedGraph::from_edges(edges)
    }

    #[test]
    fn settings_per_protocol() {
        assert_eq!(Protocol::VaryK.settings(), vec![(2, 3), (4, 3), (6, 3), (8, 3)]);
        assert_eq!(Protocol::VaryQ.settings().len(), 7);
        assert_eq!(Protocol::Iterations.settings(), vec![(6, 5)]);
        for p in [Protocol::VaryK, Protocol::VaryQ, Protocol::Iterations] {
            assert_eq!(p.name().parse::<Protocol>().unwrap(), p);
        }
    }

    #[test]
    fn reproducible_and_in_core() {
        let g = graph();
        let idx = core_decompose(&g);
        let a = Workload::generate(&g, &idx, Protocol::VaryK, 5, 20);
        assert_eq!(a, Workload::generate(&g, &idx, Protocol::VaryK, 5, 20));
        assert_ne!(a, Workload::generate(&g, &idx, Protocol::VaryK, 6, 20));
        assert_eq!(a.queries.len(), 80);
        for wq in &a.queries {
            assert_eq!(wq.query.len(), 3);
            let mut s = wq.query.clone();
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), 3);
            let pool = g.nodes().filter(|&v| idx.coreness(v) >= wq.k).count();
            if pool >= 3 {
                assert!(wq.query.iter().all(|&x| idx.coreness(g.node(x).unwrap()) >= wq.k));
            }
        }
    }

    #[test]
    fn small_pool_falls_back_to_all_nodes() {
        let g = graph();
        let idx = core_decompose(&g);
        let w = Workload::generate(&g, &idx, Protocol::VaryK, 1, 5);
        let high_k: Vec<_> = w.queries.iter().filter(|q| q.k > idx.delta_max()).collect();
        assert!(!high_k.is_empty());
        assert!(high_k.iter().all(|q| q.query.len() == 3));
        assert!(high_k.iter().any(|q| q.query.iter().any(|&x| x >= 12)));
    }
}
