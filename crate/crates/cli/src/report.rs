//! JSON reports: `{command, params, verdict, metrics, failures, wall_time_ms}`.

use gdcage_core::cage::{CageReport, Failure, Witness};
use gdcage_core::graph::{Graph, Metric};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// A measurement with nothing to verify.
    Ok,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metrics {
    pub girth: Value,
    pub diameter: Value,
    pub order: usize,
    pub regular_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub verdict: Verdict,
    pub metrics: Metrics,
    pub failures: Vec<Value>,
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Report {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

pub fn metric(m: Metric) -> Value {
    match m {
        Metric::Finite(v) => json!(v),
        Metric::Infinite => json!("inf"),
    }
}

/// Integers beyond u64 are written as decimal strings.
pub fn big(n: &BigUint) -> Value {
    u64::try_from(n).map_or_else(|_| json!(n.to_string()), |v| json!(v))
}

pub fn metrics_of(g: &Graph) -> Metrics {
    Metrics {
        girth: metric(g.girth()),
        diameter: metric(g.diameter()),
        order: g.order(),
        regular_degree: g.regular_degree(),
        aut_order: None,
    }
}

pub fn failure(f: &Failure) -> Value {
    let witness = match &f.witness {
        Witness::None => Value::Null,
        Witness::Vertex { vertex, degree } => json!({"kind": "vertex", "vertex": vertex, "degree": degree}),
        Witness::Cycle(c) => json!({"kind": "cycle", "vertices": c}),
        Witness::Pair { u, v, distance } => json!({"kind": "pair", "u": u, "v": v, "distance": metric(*distance)}),
    };
    json!({"check": f.check.name(), "message": f.message, "witness": witness})
}

pub fn from_cage_report(command: &str, params: Value, g: &Graph, r: &CageReport, start: Instant) -> Report {
    Report {
        command: command.into(),
        params,
        verdict: if r.passed() { Verdict::Pass } else { Verdict::Fail },
        metrics: Metrics {
            girth: metric(r.measured_girth),
            diameter: metric(r.measured_diameter),
            order: r.order,
            regular_degree: g.regular_degree(),
            aut_order: None,
        },
        failures: r.failures.iter().map(failure).collect(),
        wall_time_ms: elapsed_ms(start),
        details: None,
    }
}

pub fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}
