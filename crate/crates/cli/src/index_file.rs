//! Persisted coreness index.
//!
//! ```text
//! #coreness v1 <sha256 of the graph file>
//! <external node id> <coreness>
//! ...
//! ```
//!
//! Entries are sorted by external node id.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use icgroup_core::{core_decompose, CoreIndex, WeightedGraph};
use sha2::{Digest, Sha256};

use crate::edgelist::{parse_edge_list, LoadedGraph};
use crate::error::{Error, Result};

const MAGIC: &str = "#coreness";
const VERSION: &str = "v1";

/// Hex SHA-256 of a graph file's bytes.
pub fn content_hash(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parsed index file, not yet bound to a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFile {
    pub graph_hash: String,
    pub entries: Vec<(u64, u32)>,
}

impl IndexFile {
    pub fn from_index(g: &WeightedGraph, idx: &CoreIndex, graph_hash: &str) -> Self {
        let entries = g.nodes().map(|v| (g.external_id(v), idx.coreness(v))).collect();
        IndexFile { graph_hash: graph_hash.to_owned(), entries }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{MAGIC} {VERSION} {}\n", self.graph_hash);
        for (id, c) in &self.entries {
            writeln!(out, "{id} {c}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Format("missing header".into()))?;
        let mut parts = header.split_whitespace();
        let (Some(MAGIC), Some(VERSION), Some(hash), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(Error::Format(format!("bad header {header:?}")));
        };
        let mut entries = Vec::new();
        for (i, line) in lines.enumerate() {
            let line_no = i + 2;
            if line.trim().is_empty() {
                continue;
            }
            let mut f = line.split_whitespace();
            let parsed = match (f.next(), f.next(), f.next()) {
                (Some(a), Some(b), None) => a.parse::<u64>().ok().zip(b.parse::<u32>().ok()),
                _ => None,
            };
            let (id, c) = parsed.ok_or_else(|| Error::Format(format!("line {line_no}: bad entry {line:?}")))?;
            if entries.last().is_some_and(|&(prev, _)| prev >= id) {
                return Err(Error::Format(format!("line {line_no}: ids must be strictly ascending")));
            }
            entries.push((id, c));
        }
        Ok(IndexFile { graph_hash: hash.to_owned(), entries })
    }

    /// Binds the entries to `g`'s node ids; every node must appear exactly once.
    pub fn to_core_index(&self, g: &WeightedGraph) -> Result<CoreIndex> {
        if self.entries.len() != g.node_count() {
            return Err(Error::Format(format!(
                "index has {} entries, graph has {} nodes",
                self.entries.len(),
                g.node_count()
            )));
        }
        let mut coreness = vec![0u32; g.node_count()];
        for &(id, c) in &self.entries {
            let v = g.node(id).ok_or_else(|| Error::Format(format!("node {id} not in graph")))?;
            coreness[v.index()] = c;
        }
        Ok(CoreIndex::from_coreness(coreness))
    }
}

pub fn save_index(file: &IndexFile, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, file.to_text()).map_err(|e| Error::io(path, e))
}

pub fn load_index(path: impl AsRef<Path>) -> Result<IndexFile> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    IndexFile::parse(&text)
}

/// Graph plus a coreness index that is known to belong to it.
#[derive(Debug, Clone)]
pub struct Indexed {
    pub loaded: LoadedGraph,
    pub index: CoreIndex,
    pub graph_hash: String,
    /// The index file was missing, stale or unreadable and has been rewritten.
    pub rebuilt: bool,
}

/// Decomposes the graph at `graph_path` and writes its index.
pub fn build_index(graph_path: impl AsRef<Path>, index_path: impl AsRef<Path>) -> Result<Indexed> {
    let (loaded, hash) = read_graph(graph_path.as_ref())?;
    let index = core_decompose(&loaded.graph);
    save_index(&IndexFile::from_index(&loaded.graph, &index, &hash), index_path)?;
    Ok(Indexed { loaded, index, graph_hash: hash, rebuilt: true })
}

/// Loads the graph and its index, regenerating the index file when it is
/// missing or its recorded hash does not match the graph file.
pub fn load_or_build(graph_path: impl AsRef<Path>, index_path: impl AsRef<Path>) -> Result<Indexed> {
    let index_path = index_path.as_ref();
    let (loaded, hash) = read_graph(graph_path.as_ref())?;
    let existing = match load_index(index_path) {
        Ok(f) if f.graph_hash == hash => f.to_core_index(&loaded.graph).ok(),
        Ok(_) => None,
        Err(Error::Io { source, .. }) if source.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(e),
    };
    match existing {
        Some(index) => Ok(Indexed { loaded, index, graph_hash: hash, rebuilt: false }),
        None => {
            let index = core_decompose(&loaded.graph);
            save_index(&IndexFile::from_index(&loaded.graph, &index, &hash), index_path)?;
            Ok(Indexed { loaded, index, graph_hash: hash, rebuilt: true })
        }
    }
}

fn read_graph(path: &Path) -> Result<(LoadedGraph, String)> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let hash = content_hash(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse { line: 0, message: "file is not UTF-8".into() })?;
    Ok((parse_edge_list(&text)?, hash))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let lg = parse_edge_list("1 2 1\n2 3 1\n1 3 1\n3 40 2\n").unwrap();
        let idx = core_decompose(&lg.graph);
        let file = IndexFile::from_index(&lg.graph, &idx, "abc");
        let back = IndexFile::parse(&file.to_text()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_core_index(&lg.graph).unwrap(), idx);
    }

    #[test]
    fn empty_graph_is_header_only() {
        let lg = parse_edge_list("").unwrap();
        let idx = core_decompose(&lg.graph);
        let text = IndexFile::from_index(&lg.graph, &idx, "h").to_text();
        assert_eq!(text, "#coreness v1 h\n");
        assert!(IndexFile::parse(&text).unwrap().entries.is_empty());
    }

    #[test]
    fn hand_written_three_entries() {
        let f = IndexFile::parse("#coreness v1 deadbeef\n1 2\n2 2\n7 1\n").unwrap();
        assert_eq!(f.entries, vec![(1, 2), (2, 2), (7, 1)]);
        assert_eq!(f.graph_hash, "deadbeef");
    }

    #[test]
    fn malformed_files_are_rejected() {
        for bad in ["", "#coreness v2 h\n", "#core v1 h\n", "#coreness v1 h\n1\n", "#coreness v1 h\n2 1\n1 1\n", "#coreness v1 h\n1 -3\n"] {
            assert!(matches!(IndexFile::parse(bad), Err(Error::Format(_))), "{bad:?}");
        }
    }

    #[test]
    fn mismatched_graph_is_rejected() {
        let lg = parse_edge_list("1 2 1\n").unwrap();
        let f = IndexFile::parse("#coreness v1 h\n1 1\n3 1\n").unwrap();
        assert!(f.to_core_index(&lg.graph).is_err());
    }

    #[test]
    fn hash_is_sha256_hex() {
        assert_eq!(content_hash(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
