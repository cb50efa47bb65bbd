//! Biaffine planes: PG(2, q) minus a point P, a line l, the lines through P
//! and the points on l.

use super::plane::{levi, ProjectivePlane};
use super::GeometryError;
use crate::cage::{CageReport, Check, Failure, Witness};
use crate::graph::{Graph, Metric};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Carries the index of the point in the plane.
    Point(usize),
    Line(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneType {
    /// P lies on l.
    One,
    Two,
}

impl PlaneType {
    pub fn from_number(t: u8) -> Result<Self, GeometryError> {
        match t {
            1 => Ok(PlaneType::One),
            2 => Ok(PlaneType::Two),
            _ => Err(GeometryError::BadType(t)),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            PlaneType::One => 1,
            PlaneType::Two => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    Point,
    Line,
}

#[derive(Debug, Clone)]
pub struct BiaffineLevi {
    pub q: usize,
    pub plane_type: PlaneType,
    pub pole: usize,
    pub axis: usize,
    /// Surviving points first, then surviving lines, each in plane order.
    pub graph: Graph,
    pub side: Vec<Side>,
    /// Surviving points grouped by the deleted line through the pole.
    pub point_classes: Vec<Vec<usize>>,
    /// Surviving lines grouped by their deleted intersection point on the axis.
    pub line_classes: Vec<Vec<usize>>,
}

impl BiaffineLevi {
    pub fn classes(&self, kind: ClassKind) -> &[Vec<usize>] {
        match kind {
            ClassKind::Point => &self.point_classes,
            ClassKind::Line => &self.line_classes,
        }
    }

    /// Class containing vertex `v`, as `(kind, index)`.
    pub fn class_of(&self, v: usize) -> Option<(ClassKind, usize)> {
        for kind in [ClassKind::Point, ClassKind::Line] {
            if let Some(i) = self.classes(kind).iter().position(|c| c.contains(&v)) {
                return Some((kind, i));
            }
        }
        None
    }

    /// Same partition data with a different graph on the same vertex set,
    /// for checking modified graphs.
    pub fn with_graph(&self, graph: Graph) -> Result<Self, GeometryError> {
        if graph.order() != self.graph.order() {
            return Err(GeometryError::OrderMismatch { expected: self.graph.order(), found: graph.order() });
        }
        Ok(BiaffineLevi { graph, ..self.clone() })
    }
}

/// Deletes the pole `p`, the axis `l`, all lines through `p` and all points on `l`.
pub fn biaffine(pi: &ProjectivePlane, p: usize, l: usize, want: PlaneType) -> Result<BiaffineLevi, GeometryError> {
    let n = pi.size();
    if p >= n {
        return Err(GeometryError::PointOutOfRange { point: p, count: n });
    }
    if l >= n {
        return Err(GeometryError::LineOutOfRange { line: l, count: n });
    }
    let incident = pi.incident(p, l);
    if incident != (want == PlaneType::One) {
        return Err(GeometryError::IncidenceMismatch { plane_type: want.number(), incident });
    }
    let points: Vec<usize> = (0..n).filter(|&x| x != p && !pi.incident(x, l)).collect();
    let lines: Vec<usize> = (0..n).filter(|&m| m != l && !pi.incident(p, m)).collect();
    let full = levi(pi);
    let keep: Vec<usize> = points.iter().copied().chain(lines.iter().map(|m| n + m)).collect();
    let graph = full.induced(&keep)?;
    let side = points.iter().map(|&x| Side::Point(x)).chain(lines.iter().map(|&m| Side::Line(m))).collect();

    let point_classes = pi
        .lines_through(p)
        .iter()
        .filter(|&&m| m != l)
        .map(|&m| (0..points.len()).filter(|&i| pi.incident(points[i], m)).collect())
        .collect();
    let line_classes = pi
        .points_on(l)
        .iter()
        .filter(|&&x| x != p)
        .map(|&x| (0..lines.len()).filter(|&j| pi.incident(x, lines[j])).map(|j| points.len() + j).collect())
        .collect();
    Ok(BiaffineLevi {
        q: pi.order(),
        plane_type: want,
        pole: p,
        axis: l,
        graph,
        side,
        point_classes,
        line_classes,
    })
}

/// Point 0 as the pole, with the first line through it (type 1) or the
/// first line missing it (type 2) as the axis.
pub fn default_flag(pi: &ProjectivePlane, want: PlaneType) -> (usize, usize) {
    let l = (0..pi.size()).find(|&l| pi.incident(0, l) == (want == PlaneType::One)).expect("q >= 2 has both kinds");
    (0, l)
}

const MAX_WITNESSES: usize = 20;

/// Checks that the pairs at distance 4 are exactly the pairs inside one class.
pub fn distance4_classes(b: &BiaffineLevi) -> CageReport {
    let g = &b.graph;
    let n = g.order();
    let mut class_id = vec![usize::MAX; n];
    for (i, c) in b.point_classes.iter().chain(&b.line_classes).enumerate() {
        for &v in c {
            class_id[v] = i;
        }
    }
    let dist = g.distance_matrix();
    let mut failures = Vec::new();
    let mut total = 0usize;
    for u in 0..n {
        for v in u + 1..n {
            let same = class_id[u] != usize::MAX && class_id[u] == class_id[v];
            let far = dist[u][v] == 4;
            if same != far {
                total += 1;
                if failures.len() < MAX_WITNESSES {
                    let distance = crate::graph::metrics::to_metric(dist[u][v]);
                    let message = if same {
                        format!("same-class vertices {u} and {v} at distance {distance}")
                    } else {
                        format!("vertices {u} and {v} from different classes at distance 4")
                    };
                    failures.push(Failure { check: Check::Distance4Classes, message, witness: Witness::Pair { u, v, distance } });
                }
            }
        }
    }
    if total > failures.len() {
        let extra = total - failures.len();
        if let Some(last) = failures.last_mut() {
            last.message.push_str(&format!(" ({extra} further mismatches omitted)"));
        }
    }
    let girth = g.girth();
    let diameter = dist.iter().flatten().map(|&d| crate::graph::metrics::to_metric(d)).max().unwrap_or(Metric::Finite(0));
    CageReport::from_failures(g, g.regular_degree().is_some(), girth, diameter, failures)
}
