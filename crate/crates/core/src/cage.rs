//! Moore-bound arithmetic and verification of (k; g, d)-graphs.

use crate::graph::{Graph, GraphError, Metric};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CageError {
    #[error("degree {0} is too small (need k >= {1})")]
    DegreeTooSmall(usize, usize),
    #[error("invalid parameters (k={k}, g={g}, d={d}): {reason}")]
    InvalidParams { k: usize, g: usize, d: usize, reason: &'static str },
    #[error("no pair of vertices at distance 4")]
    NoAntipodalPair,
    #[error("vertices {r} and {c} are at distance {dist}, not 4")]
    NotAntipodal { r: usize, c: usize, dist: Metric },
    #[error("graph is not {k}-regular of order {expected} (order {order})")]
    NotMooreGraph { k: usize, expected: usize, order: usize },
    #[error("middle vertex {vertex} has {count} neighbours in N({pole})")]
    PoleNeighbours { vertex: usize, pole: usize, count: usize },
    #[error("middle vertices do not form a k x k grid minus a matching: {0}")]
    BadGrid(String),
    #[error("malformed middle graph: {0}")]
    BadMiddle(String),
    #[error("middle graph fails its checks: {0}")]
    MiddleCheckFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Lower bound k^2 + k + 2 on the order of a k-regular graph of girth 5 and
/// diameter 4.
pub fn moore_bound(k: usize) -> Result<usize, CageError> {
    if k < 2 {
        return Err(CageError::DegreeTooSmall(k, 2));
    }
    Ok(k * k + k + 2)
}

/// Returns `(k(k-1), M(k-2) + 2(k-2))`, two expressions for the order of
/// the middle graph.
pub fn middle_order_identity(k: usize) -> Result<(usize, usize), CageError> {
    if k < 4 {
        return Err(CageError::DegreeTooSmall(k, 4));
    }
    Ok((k * (k - 1), moore_bound(k - 2)? + 2 * (k - 2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CageParams {
    pub k: usize,
    pub g: usize,
    pub d: usize,
}

impl CageParams {
    pub fn new(k: usize, g: usize, d: usize) -> Result<Self, CageError> {
        let bad = |reason| Err(CageError::InvalidParams { k, g, d, reason });
        if k < 2 {
            return bad("degree must be at least 2");
        }
        if g < 3 {
            return bad("girth must be at least 3");
        }
        if d < 1 {
            return bad("diameter must be at least 1");
        }
        if g / 2 > d {
            return bad("floor(g/2) exceeds d");
        }
        Ok(CageParams { k, g, d })
    }
}

impl fmt::Display for CageParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{},{})", self.k, self.g, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Order,
    Regularity,
    Girth,
    Diameter,
    /// Adjacent middle vertices share a row or column label.
    LabelAdjacency,
    /// Two middle vertices sharing a label coordinate are closer than 3.
    LabelDistance,
    /// Distance-4 pairs differ from same-class pairs.
    Distance4Classes,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Order => "order",
            Check::Regularity => "regularity",
            Check::Girth => "girth",
            Check::Diameter => "diameter",
            Check::LabelAdjacency => "label-adjacency",
            Check::LabelDistance => "label-distance",
            Check::Distance4Classes => "distance4-classes",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    None,
    Vertex { vertex: usize, degree: usize },
    Cycle(Vec<usize>),
    Pair { u: usize, v: usize, distance: Metric },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub check: Check,
    pub message: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CageReport {
    pub verdict: Verdict,
    pub order: usize,
    pub regular: bool,
    pub measured_girth: Metric,
    pub measured_diameter: Metric,
    pub failures: Vec<Failure>,
}

impl CageReport {
    pub(crate) fn from_failures(g: &Graph, regular: bool, girth: Metric, diameter: Metric, failures: Vec<Failure>) -> Self {
        CageReport {
            verdict: if failures.is_empty() { Verdict::Pass } else { Verdict::Fail },
            order: g.order(),
            regular,
            measured_girth: girth,
            measured_diameter: diameter,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One line per failure, for error messages.
    pub fn summary(&self) -> String {
        self.failures.iter().map(|f| format!("{}: {}", f.check.name(), f.message)).collect::<Vec<_>>().join("; ")
    }
}

pub(crate) fn degree_failure(g: &Graph, k: usize) -> Option<Failure> {
    (0..g.order()).find(|&v| g.degree(v) != k).map(|v| Failure {
        check: Check::Regularity,
        message: format!("vertex {v} has degree {} (expected {k})", g.degree(v)),
        witness: Witness::Vertex { vertex: v, degree: g.degree(v) },
    })
}

/// Checks that `g` is `p.k`-regular with girth exactly `p.g` and diameter
/// exactly `p.d`.
pub fn verify_gd_graph(g: &Graph, p: CageParams) -> CageReport {
    let mut failures = Vec::new();
    let degree_fail = degree_failure(g, p.k);
    let regular = degree_fail.is_none();
    failures.extend(degree_fail);
    let cycle = g.shortest_cycle();
    let girth = cycle.as_ref().map_or(Metric::Infinite, |c| Metric::Finite(c.len()));
    if girth != Metric::Finite(p.g) {
        failures.push(Failure {
            check: Check::Girth,
            message: format!("girth is {girth} (expected {})", p.g),
            witness: cycle.map_or(Witness::None, Witness::Cycle),
        });
    }
    let (diameter, pair) = g.diameter_witness();
    if diameter != Metric::Finite(p.d) {
        failures.push(Failure {
            check: Check::Diameter,
            message: format!("diameter is {diameter} (expected {})", p.d),
            witness: pair.map_or(Witness::None, |(u, v)| Witness::Pair { u, v, distance: diameter }),
        });
    }
    CageReport::from_failures(g, regular, girth, diameter, failures)
}

/// The lexicographically least pair `(r, c)` at distance 4.
pub fn find_antipodal_pair(g: &Graph) -> Result<(usize, usize), CageError> {
    antipodal_pairs(g).into_iter().next().ok_or(CageError::NoAntipodalPair)
}

/// All pairs `(r, c)` with `r < c` at distance exactly 4, in lexicographic order.
pub fn antipodal_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut raw = Vec::new();
    for r in 0..g.order() {
        g.bfs_raw(r, &mut raw);
        out.extend((r + 1..g.order()).filter(|&c| raw[c] == 4).map(|c| (r, c)));
    }
    out
}
