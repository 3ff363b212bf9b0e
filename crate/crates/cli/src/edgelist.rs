//! Whitespace-separated `u v w` edge lists.
//!
//! Blank lines and lines starting with `#` are ignored. Duplicate pairs keep
//! the smaller weight, self-loops are dropped and counted, and weights must
//! be strictly positive.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use icgroup_core::{BuildReport, GraphBuilder, GraphError, WeightedGraph};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: WeightedGraph,
    pub report: BuildReport,
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut builder = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(u), Some(v), Some(w), None) = (fields.next(), fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse { line, message: format!("expected `u v w`, got {trimmed:?}") });
        };
        let parse_id = |s: &str| {
            s.parse::<u64>().map_err(|_| Error::Parse { line, message: format!("bad node id {s:?}") })
        };
        let (u, v) = (parse_id(u)?, parse_id(v)?);
        let w: f64 = w.parse().map_err(|_| Error::Parse { line, message: format!("bad weight {w:?}") })?;
        builder.add_edge(u, v, w).map_err(|source| match source {
            GraphError::InvalidWeight { .. } => Error::Weight { line, source },
            other => Error::Graph(other),
        })?;
    }
    let report = builder.report();
    Ok(LoadedGraph { graph: builder.build(), report })
}

/// Serializes `g` with external ids, one edge per line in ascending order.
pub fn format_edge_list(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for (u, v, w) in g.edges() {
        writeln!(out, "{} {} {}", g.external_id(u), g.external_id(v), w).unwrap();
    }
    out
}
