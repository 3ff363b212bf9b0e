use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use icgroup::bench::{run_bench, write_records, write_timings, BenchConfig};
use icgroup::clock::StdClock;
use icgroup::edgelist::load_graph;
use icgroup::generate::{format_edges, generate, GenConfig, Model, WeightModel};
use icgroup::index_file::{build_index, load_or_build};
use icgroup::report::ResultJson;
use icgroup::workload::{Protocol, Workload, DEFAULT_QUERIES};
use icgroup::{Error, Result};
use icgroup_core::{
    oracle_min_group, search_with_clock, NodeId, QuerySpec, RefineConfig, Scorer, Strategy, WeightedGraph,
    MAX_ORACLE_NODES,
};
use serde_json::json;

/// Intimate-core group search on weighted graphs.
#[derive(Debug, Parser)]
#[command(name = "icgroup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the coreness index of an edge list.
    Index { graph: PathBuf, index: PathBuf },
    /// Answer one query and print the result as JSON.
    Query {
        graph: PathBuf,
        /// Rebuilt automatically when missing or stale.
        index: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[command(flatten)]
        algo: AlgoArgs,
    },
    /// Write a synthetic edge list to stdout.
    Gen {
        #[arg(long)]
        nodes: usize,
        #[arg(long, value_parser = parse_with::<Model>)]
        model: Model,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "uniform01", value_parser = parse_with::<WeightModel>)]
        weights: WeightModel,
        /// Edges per new node (powerlaw) and default density (gnp).
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// gnp edge probability; defaults to 2m / (n - 1).
        #[arg(long)]
        p: Option<f64>,
    },
    /// Run a benchmark protocol with every strategy and write CSV.
    Bench {
        graph: PathBuf,
        index: PathBuf,
        #[arg(long, value_parser = parse_with::<Protocol>)]
        protocol: Protocol,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Timings are written next to it as `<out>.timing.csv`.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_QUERIES)]
        queries: usize,
        #[command(flatten)]
        algo: AlgoArgs,
    },
    /// Exact answer by subset enumeration (at most 16 nodes).
    Oracle {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = MAX_ORACLE_NODES)]
        budget: usize,
    },
}

#[derive(Debug, clap::Args)]
struct AlgoArgs {
    #[arg(long, default_value = "tree-path", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Bulk deletion fraction, in (0, 1).
    #[arg(long, default_value_t = 0.1, value_parser = parse_epsilon)]
    epsilon: f64,
    #[arg(long, default_value = "sum", value_parser = ["sum", "max"])]
    scorer: String,
    /// Expansion level limit; past it the whole component is refined.
    #[arg(long)]
    max_depth: Option<usize>,
}

impl AlgoArgs {
    fn refine(&self) -> RefineConfig {
        let scorer = if self.scorer == "max" { Scorer::Max } else { Scorer::Sum };
        RefineConfig { epsilon: self.epsilon, scorer, ..RefineConfig::default() }
    }
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Strategy::ALL.iter().map(|st| st.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_epsilon(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(e) if e > 0.0 && e < 1.0 => Ok(e),
        _ => Err("epsilon must be a number strictly between 0 and 1".into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Index { graph, index } => {
            let built = build_index(&graph, &index)?;
            warn_report(&graph, &built.loaded.report);
            eprintln!(
                "indexed {} nodes, {} edges, max coreness {}",
                built.loaded.graph.node_count(),
                built.loaded.graph.edge_count(),
                built.index.delta_max()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Query { graph, index, q, k, algo } => {
            let ix = load_or_build(&graph, &index)?;
            if ix.rebuilt {
                eprintln!("note: rebuilt index {}", index.display());
            }
            let g = &ix.loaded.graph;
            let spec = QuerySpec { query: resolve(g, &q)?, k, strategy: algo.strategy, refine: algo.refine(), max_depth: algo.max_depth };
            let r = search_with_clock(g, &ix.index, &spec, &StdClock::new());
            if let Some(e) = usage_error(&r.failure) {
                return Err(e);
            }
            print_json(&serde_json::to_value(ResultJson::new(g, &r)).expect("serializable"))?;
            Ok(if r.feasible { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gen { nodes, model, seed, weights, m, p } => {
            let edges = generate(&GenConfig { nodes, model, seed, weights, m, p })?;
            let mut out = io::stdout().lock();
            out.write_all(format_edges(&edges).as_bytes()).map_err(|e| Error::io("<stdout>", e))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { graph, index, protocol, seed, out, queries, algo } => {
            let ix = load_or_build(&graph, &index)?;
            let g = &ix.loaded.graph;
            let workload = Workload::generate(g, &ix.index, protocol, seed, queries);
            let cfg = BenchConfig { strategies: Strategy::ALL.to_vec(), refine: algo.refine(), max_depth: algo.max_depth };
            let result = run_bench(g, &ix.index, &workload, &cfg)?;
            write_records(create(&out)?, &result.records)?;
            write_timings(create(&timing_path(&out))?, &result.timings)?;
            let feasible = result.records.iter().filter(|r| r.feasible).count();
            eprintln!("{} rows ({feasible} feasible) written to {}", result.records.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { graph, q, k, budget } => {
            let g = load_graph(&graph)?.graph;
            let query = resolve(&g, &q)?;
            let best = oracle_min_group(&g, &query, k, budget)?;
            let value = match &best {
                Some(b) => json!({
                    "feasible": true,
                    "members": b.members.iter().map(|&v| g.external_id(v)).collect::<Vec<_>>(),
                    "weight": b.weight,
                }),
                None => json!({ "feasible": false, "members": [], "weight": null }),
            };
            print_json(&value)?;
            Ok(if best.is_some() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

/// Malformed queries are usage errors, not infeasible answers.
fn usage_error(failure: &Option<icgroup_core::SearchError>) -> Option<Error> {
    match failure {
        Some(icgroup_core::SearchError::InvalidQuery(msg)) => Some(Error::Usage((*msg).to_owned())),
        _ => None,
    }
}

fn resolve(g: &WeightedGraph, q: &[u64]) -> Result<Vec<NodeId>> {
    q.iter().map(|&x| g.node(x).ok_or_else(|| Error::Usage(format!("query node {x} is not in the graph")))).collect()
}

fn timing_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".timing.csv");
    PathBuf::from(s)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Error::io(path, e))
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).expect("serializable");
    writeln!(out).map_err(|e| Error::io("<stdout>", e))
}

fn warn_report(path: &Path, report: &icgroup_core::BuildReport) {
    if report.self_loops > 0 || report.duplicates > 0 {
        eprintln!(
            "warning: {}: dropped {} self-loops, merged {} duplicate edges",
            path.display(),
            report.self_loops,
            report.duplicates
        );
    }
}
