//! Plain-text edge lists: a header line `n m`, then `m` lines `u v` (0-based).

use super::{Graph, GraphError};
use std::fmt::Write;

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let err = |msg: String| GraphError::EdgeList(msg);
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| err("missing header line".into()))?;
    let (n, m) = parse_pair(header).ok_or_else(|| err(format!("bad header line {header:?}")))?;
    let mut edges = Vec::with_capacity(m);
    for line in lines.by_ref().take(m) {
        edges.push(parse_pair(line).ok_or_else(|| err(format!("bad edge line {line:?}")))?);
    }
    if edges.len() != m {
        return Err(err(format!("header promises {m} edges, found {}", edges.len())));
    }
    if let Some(extra) = lines.next() {
        return Err(err(format!("unexpected line after {m} edges: {extra:?}")));
    }
    Graph::from_edges(n, edges)
}

pub(crate) fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
