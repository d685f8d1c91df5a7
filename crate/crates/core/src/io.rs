//! Whitespace-separated edge lists.
//!
//! Each data line holds two non-negative integer vertex ids; further columns
//! (weights, timestamps) are ignored. Lines starting with `%` or `#` are
//! comments. Self-loops are dropped and repeated edges merged, with counts
//! reported back to the caller. Ids are compacted to `0..n` in increasing
//! numeric order, so 0- and 1-based files read the same and a written graph
//! without isolated vertices reads back with identical ids.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedEdgeList {
    pub graph: Graph,
    /// Original id of each compacted vertex.
    pub original_ids: Vec<u64>,
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

pub fn parse_edge_list<R: Read>(reader: R) -> Result<ParsedEdgeList> {
    let mut raw = Vec::new();
    let mut self_loops = 0;
    for (number, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: number + 1,
                message: format!("expected two vertex ids, found `{line}`"),
            });
        };
        let parse = |token: &str| {
            token.parse::<u64>().map_err(|_| Error::Parse {
                line: number + 1,
                message: format!("`{token}` is not a non-negative integer vertex id"),
            })
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            self_loops += 1;
            continue;
        }
        raw.push((u.min(v), u.max(v)));
    }

    let before = raw.len();
    raw.sort_unstable();
    raw.dedup();
    let duplicate_edges = before - raw.len();

    let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() > VertexId::MAX as usize {
        return Err(Error::InvalidGraph(format!("{} vertices exceed the id range", ids.len())));
    }
    let compact = |id: u64| ids.binary_search(&id).expect("id collected above") as VertexId;
    let edges: Vec<_> = raw.iter().map(|&(u, v)| (compact(u), compact(v))).collect();
    let graph = Graph::from_edges(ids.len(), edges)?;
    Ok(ParsedEdgeList { graph, original_ids: ids, self_loops, duplicate_edges })
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<ParsedEdgeList> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_edge_list(file)
}

/// Write `header` as `#` comment lines followed by one `u v` line per edge.
pub fn write_edge_list<W: Write>(writer: W, graph: &Graph, header: &[String]) -> Result<()> {
    let mut out = BufWriter::new(writer);
    for line in header {
        writeln!(out, "# {line}")?;
    }
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}
