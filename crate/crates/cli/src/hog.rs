//! House of Graphs client.

use crate::error::CliError;
use gdcage_core::graph::{decode_graph6, Graph};
use serde_json::Value;

pub const API_BASE: &str = "https://houseofgraphs.org/api/graphs";

/// The graph6 string is read from the `canonicalForm` field; any other
/// payload shape is an error.
pub fn graph_from_payload(body: &str) -> Result<Graph, CliError> {
    let v: Value = serde_json::from_str(body).map_err(|e| CliError::Network(format!("unparseable payload: {e}")))?;
    let g6 = v
        .get("canonicalForm")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Network("payload has no string field \"canonicalForm\"".into()))?;
    decode_graph6(g6.trim().as_bytes()).map_err(|e| CliError::Network(format!("payload graph6 invalid: {e}")))
}

pub fn fetch(id: u64) -> Result<Graph, CliError> {
    if id == 0 {
        return Err(CliError::Usage("graph ids start at 1".into()));
    }
    let url = format!("{API_BASE}/{id}");
    let body = ureq::get(&url)
        .call()
        .map_err(|e| CliError::Network(format!("GET {url}: {e}")))?
        .body_mut()
        .read_to_string()
        .map_err(|e| CliError::Network(format!("GET {url}: {e}")))?;
    graph_from_payload(&body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_shapes() {
        let g = graph_from_payload(r#"{"graphId": 1, "canonicalForm": "Dhc"}"#).unwrap();
        assert_eq!(g.order(), 5);
        assert!(matches!(graph_from_payload(r#"{"graphId": 1}"#), Err(CliError::Network(_))));
        assert!(matches!(graph_from_payload("<html>"), Err(CliError::Network(_))));
        assert!(matches!(graph_from_payload(r#"{"canonicalForm": "!!"}"#), Err(CliError::Network(_))));
        assert!(matches!(fetch(0), Err(CliError::Usage(_))));
    }
}
