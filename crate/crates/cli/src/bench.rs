//! Benchmark driver: every strategy on the same workload, one CSV row per
//! (query, strategy).
//!
//! The main CSV holds only seed-determined values, so two runs with the same
//! inputs are byte-identical. Wall-clock timings go to a separate sidecar CSV
//! keyed by the same `(query_id, strategy)` pair.

use std::io::Write;

use icgroup_core::{search_with_clock, CoreIndex, NodeId, QuerySpec, RefineConfig, Strategy, WeightedGraph};
use serde::Serialize;

use crate::clock::StdClock;
use crate::error::{Error, Result};
use crate::report::reason_code;
use crate::workload::Workload;

pub const CSV_VERSION_LINE: &str = "# icgroup-bench v1";
pub const TIMING_VERSION_LINE: &str = "# icgroup-bench-timing v1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub query_id: usize,
    pub strategy: &'static str,
    pub k: u32,
    pub q_size: usize,
    /// External ids joined with `;`.
    pub query: String,
    pub feasible: bool,
    /// Empty when feasible.
    pub reason: &'static str,
    pub weight: Option<f64>,
    pub iterations: usize,
    pub l_max: usize,
    pub initial_size: usize,
    pub final_size: usize,
    /// Candidate size per refinement iteration, `;`-joined.
    pub sizes: String,
    pub weights: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRecord {
    pub query_id: usize,
    pub strategy: &'static str,
    pub tree_ms: f64,
    pub expand_ms: f64,
    pub refine_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub strategies: Vec<Strategy>,
    /// Epsilon and scorer; the mode is fixed per strategy.
    pub refine: RefineConfig,
    pub max_depth: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { strategies: Strategy::ALL.to_vec(), refine: RefineConfig::default(), max_depth: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchOutput {
    pub records: Vec<BenchRecord>,
    pub timings: Vec<TimingRecord>,
}

/// Runs the workload sequentially, query-major.
pub fn run_bench(g: &WeightedGraph, idx: &CoreIndex, workload: &Workload, cfg: &BenchConfig) -> Result<BenchOutput> {
    let mut out = BenchOutput::default();
    for wq in &workload.queries {
        let query: Vec<NodeId> = wq.query.iter().map(|&x| g.try_node(x)).collect::<std::result::Result<_, _>>()?;
        let query_text = join(&wq.query);
        for &strategy in &cfg.strategies {
            let spec = QuerySpec { query: query.clone(), k: wq.k, strategy, refine: cfg.refine, max_depth: cfg.max_depth };
            let r = search_with_clock(g, idx, &spec, &StdClock::new());
            let s = &r.stats;
            out.records.push(BenchRecord {
                query_id: wq.id,
                strategy: strategy.name(),
                k: wq.k,
                q_size: wq.query.len(),
                query: query_text.clone(),
                feasible: r.feasible,
                reason: r.failure.as_ref().map_or("", reason_code),
                weight: r.feasible.then_some(r.weight),
                iterations: s.iterations,
                l_max: s.l_max,
                initial_size: s.initial_size(),
                final_size: s.final_size(),
                sizes: join(&s.sizes),
                weights: join(&s.weights),
            });
            out.timings.push(TimingRecord {
                query_id: wq.id,
                strategy: strategy.name(),
                tree_ms: s.tree_ms,
                expand_ms: s.expand_ms,
                refine_ms: s.refine_ms,
                total_ms: s.total_ms(),
            });
        }
    }
    Ok(out)
}

pub fn write_records<W: Write>(mut w: W, records: &[BenchRecord]) -> Result<()> {
    write_csv(&mut w, CSV_VERSION_LINE, records)
}

pub fn write_timings<W: Write>(mut w: W, timings: &[TimingRecord]) -> Result<()> {
    write_csv(&mut w, TIMING_VERSION_LINE, timings)
}

fn write_csv<W: Write, T: Serialize>(w: &mut W, version: &str, rows: &[T]) -> Result<()> {
    let to_err = |e: std::io::Error| Error::Format(format!("writing CSV: {e}"));
    writeln!(w, "{version}").map_err(to_err)?;
    let mut csv = csv::Writer::from_writer(w);
    for row in rows {
        csv.serialize(row).map_err(|e| Error::Format(format!("writing CSV: {e}")))?;
    }
    csv.flush().map_err(to_err)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}
