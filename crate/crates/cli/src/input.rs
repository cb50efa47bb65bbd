//! Graph input: graph6 lines or an edge list, chosen by the first line.

use crate::error::CliError;
use gdcage_core::graph::{decode_graph6, encode_graph6, parse_edge_list, write_edge_list, Graph};
use std::io::Read;

pub fn read_text(path: &str) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.to_string(), source };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn is_edge_list(first: &str) -> bool {
    let parts: Vec<&str> = first.split_whitespace().collect();
    parts.len() == 2 && parts.iter().all(|p| p.parse::<usize>().is_ok())
}

pub fn parse_graphs(text: &str) -> Result<Vec<Graph>, CliError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let Some(first) = lines.next() else {
        return Err(CliError::Input("input contains no graph".into()));
    };
    if is_edge_list(first) {
        return Ok(vec![parse_edge_list(text)?]);
    }
    std::iter::once(first).chain(lines).map(|l| Ok(decode_graph6(l.as_bytes())?)).collect()
}

pub fn read_graphs(path: &str) -> Result<Vec<Graph>, CliError> {
    parse_graphs(&read_text(path)?).map_err(|e| match e {
        CliError::Graph(g) => CliError::Input(format!("{path}: {g}")),
        other => other,
    })
}

pub fn read_single(path: &str) -> Result<Graph, CliError> {
    let mut gs = read_graphs(path)?;
    if gs.len() != 1 {
        return Err(CliError::Input(format!("{path}: expected one graph, found {}", gs.len())));
    }
    Ok(gs.pop().unwrap())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    G6,
    Edges,
}

pub fn render(g: &Graph, format: Format) -> String {
    match format {
        Format::G6 => encode_graph6(g) + "\n",
        Format::Edges => write_edge_list(g),
    }
}
