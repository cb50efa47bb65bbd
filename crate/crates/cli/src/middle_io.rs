//! Middle graphs as JSON: `{"k": 3, "edges": [[[0,1],[2,0]], ...]}`.

use crate::error::CliError;
use gdcage_core::middle::MiddleGraph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct MiddleJson {
    pub k: usize,
    pub edges: Vec<[[usize; 2]; 2]>,
}

impl MiddleJson {
    pub fn from_middle(h: &MiddleGraph) -> Self {
        MiddleJson {
            k: h.k(),
            edges: h.labeled_edges().into_iter().map(|((a, b), (c, d))| [[a, b], [c, d]]).collect(),
        }
    }

    pub fn to_middle(&self) -> Result<MiddleGraph, CliError> {
        Ok(MiddleGraph::from_labeled_edges(self.k, self.edges.iter().map(|[[a, b], [c, d]]| ((*a, *b), (*c, *d))))?)
    }
}

pub fn parse(text: &str) -> Result<MiddleGraph, CliError> {
    let j: MiddleJson = serde_json::from_str(text).map_err(|e| CliError::Input(format!("middle JSON: {e}")))?;
    j.to_middle()
}

pub fn to_line(h: &MiddleGraph) -> String {
    serde_json::to_string(&MiddleJson::from_middle(h)).expect("middles serialize")
}
