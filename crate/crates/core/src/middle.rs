//! The middle graph of a Moore-bound (k;5,4)-graph.
//!
//! For poles `r`, `c` at distance 4, the middle set is everything outside
//! `{r, c} ∪ N(r) ∪ N(c)`. Each middle vertex has exactly one neighbour
//! `r_i ∈ N(r)` and one `c_j ∈ N(c)`, so it is labelled by the grid cell
//! `(i, j)`; after relabelling columns the unused cell of row `i` is `(i, i)`.
//! Vertex indices of a [`MiddleGraph`] follow label-lexicographic order
//! `(0,1), (0,2), ..., (k-1,k-2)`.

use crate::cage::{
    degree_failure, moore_bound, CageError, CageReport, Check, Failure, Witness,
};
use crate::graph::{Graph, Metric};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MiddleGraph {
    k: usize,
    graph: Graph,
}

/// Vertex index of label `(i, j)`, `i != j`, in label-lexicographic order.
#[inline]
pub fn label_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i != j && i < k && j < k);
    i * (k - 1) + if j < i { j } else { j - 1 }
}

#[inline]
pub fn index_label(k: usize, v: usize) -> (usize, usize) {
    let i = v / (k - 1);
    let r = v % (k - 1);
    (i, if r < i { r } else { r + 1 })
}

impl MiddleGraph {
    /// Wraps a graph whose vertex `v` carries label `index_label(k, v)`.
    pub fn from_graph(k: usize, graph: Graph) -> Result<Self, CageError> {
        if k < 2 {
            return Err(CageError::DegreeTooSmall(k, 2));
        }
        if graph.order() != k * (k - 1) {
            return Err(CageError::BadMiddle(format!(
                "order {} is not k(k-1) = {}",
                graph.order(),
                k * (k - 1)
            )));
        }
        Ok(MiddleGraph { k, graph })
    }

    /// Builds a middle graph from edges between labels.
    pub fn from_labeled_edges<I>(k: usize, edges: I) -> Result<Self, CageError>
    where
        I: IntoIterator<Item = ((usize, usize), (usize, usize))>,
    {
        if k < 2 {
            return Err(CageError::DegreeTooSmall(k, 2));
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            for (i, j) in [a, b] {
                if i >= k || j >= k || i == j {
                    return Err(CageError::BadMiddle(format!("({i},{j}) is not a label for k={k}")));
                }
            }
            pairs.push((label_index(k, a.0, a.1), label_index(k, b.0, b.1)));
        }
        MiddleGraph::from_graph(k, Graph::from_edges(k * (k - 1), pairs)?)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn label(&self, v: usize) -> (usize, usize) {
        index_label(self.k, v)
    }

    pub fn labels(&self) -> Vec<(usize, usize)> {
        (0..self.graph.order()).map(|v| self.label(v)).collect()
    }

    pub fn labeled_edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        self.graph.edges().map(|(u, v)| (self.label(u), self.label(v))).collect()
    }

    /// Image under the label symmetry `(i,j) -> (σi, σj)`, followed by
    /// `(i,j) -> (j,i)` when `transpose` is set.
    pub fn transform(&self, sigma: &[usize], transpose: bool) -> MiddleGraph {
        let k = self.k;
        let map = |(i, j): (usize, usize)| {
            let (a, b) = (sigma[i], sigma[j]);
            if transpose {
                label_index(k, b, a)
            } else {
                label_index(k, a, b)
            }
        };
        let edges = self.graph.edges().map(|(u, v)| (map(self.label(u)), map(self.label(v))));
        MiddleGraph {
            k,
            graph: Graph::from_edges(self.graph.order(), edges).expect("label symmetry maps edges to edges"),
        }
    }

    /// True iff some element of the label symmetry group maps `self` onto
    /// `other` (brute force over all `2 k!` elements).
    pub fn equivalent_under_label_symmetry(&self, other: &MiddleGraph) -> bool {
        if self.k != other.k || self.graph.edge_count() != other.graph.edge_count() {
            return false;
        }
        label_symmetries(self.k).any(|(sigma, t)| self.transform(&sigma, t) == *other)
    }
}

/// All elements of the label symmetry group: diagonal permutations, each
/// with and without the transpose.
pub fn label_symmetries(k: usize) -> impl Iterator<Item = (Vec<usize>, bool)> {
    permutations(k).into_iter().flat_map(|p| [(p.clone(), false), (p, true)])
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Extracts the labelled middle graph of `g` with respect to poles `r`, `c`.
pub fn extract_middle(g: &Graph, r: usize, c: usize) -> Result<MiddleGraph, CageError> {
    g.check_vertex(r)?;
    g.check_vertex(c)?;
    let k = g.degree(r);
    let expected = moore_bound(k)?;
    if !g.is_regular(k) || g.order() != expected {
        return Err(CageError::NotMooreGraph { k, expected, order: g.order() });
    }
    let dist = g.distance(r, c)?;
    if dist != Metric::Finite(4) {
        return Err(CageError::NotAntipodal { r, c, dist });
    }
    let rows: Vec<usize> = g.neighbors(r).collect();
    let cols: Vec<usize> = g.neighbors(c).collect();
    let mut outside = vec![false; g.order()];
    for &v in [r, c].iter().chain(&rows).chain(&cols) {
        outside[v] = true;
    }
    let middle: Vec<usize> = (0..g.order()).filter(|&v| !outside[v]).collect();
    if middle.len() != k * (k - 1) {
        return Err(CageError::BadGrid(format!("{} middle vertices, expected {}", middle.len(), k * (k - 1))));
    }
    let unique_in = |v: usize, set: &[usize], pole: usize| -> Result<usize, CageError> {
        let hits: Vec<usize> = (0..k).filter(|&i| g.has_edge(v, set[i])).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            _ => Err(CageError::PoleNeighbours { vertex: v, pole, count: hits.len() }),
        }
    };
    let mut cell = vec![vec![None; k]; k];
    for &m in &middle {
        let i = unique_in(m, &rows, r)?;
        let j = unique_in(m, &cols, c)?;
        if let Some(other) = cell[i][j].replace(m) {
            return Err(CageError::BadGrid(format!("vertices {other} and {m} share row {i} and column {j}")));
        }
    }
    // Each row misses exactly one column; that must be a bijection.
    let mut missing_col_of_row = vec![0; k];
    let mut used = vec![false; k];
    for (i, row) in cell.iter().enumerate() {
        let missing: Vec<usize> = (0..k).filter(|&j| row[j].is_none()).collect();
        let [j] = missing[..] else {
            return Err(CageError::BadGrid(format!("row {i} misses {} columns", missing.len())));
        };
        if std::mem::replace(&mut used[j], true) {
            return Err(CageError::BadGrid(format!("column {j} is missed by two rows")));
        }
        missing_col_of_row[i] = j;
    }
    let mut col_label = vec![0; k];
    for (i, &j) in missing_col_of_row.iter().enumerate() {
        col_label[j] = i;
    }
    let mut order = vec![0; k * (k - 1)];
    for (i, row) in cell.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            if let Some(m) = m {
                order[label_index(k, i, col_label[j])] = *m;
            }
        }
    }
    MiddleGraph::from_graph(k, g.induced(&order)?)
}

/// Checks properties (order, regularity, girth, diameter, labels) a middle
/// graph needs in order to extend to a (k;5,4)-graph.
pub fn check_middle(h: &MiddleGraph) -> CageReport {
    let g = h.graph();
    let k = h.k();
    let mut failures = Vec::new();
    if g.order() != k * (k - 1) {
        failures.push(Failure {
            check: Check::Order,
            message: format!("order {} is not {}", g.order(), k * (k - 1)),
            witness: Witness::None,
        });
    }
    let degree_fail = k.checked_sub(2).and_then(|d| degree_failure(g, d));
    let regular = k >= 2 && degree_fail.is_none();
    failures.extend(degree_fail);
    let cycle = g.shortest_cycle();
    let girth = cycle.as_ref().map_or(Metric::Infinite, |c| Metric::Finite(c.len()));
    if girth < Metric::Finite(5) {
        failures.push(Failure {
            check: Check::Girth,
            message: format!("girth {girth} is below 5"),
            witness: cycle.map_or(Witness::None, Witness::Cycle),
        });
    }
    let (diameter, pair) = g.diameter_witness();
    if diameter < Metric::Finite(3) {
        failures.push(Failure {
            check: Check::Diameter,
            message: format!("diameter {diameter} is below 3"),
            witness: pair.map_or(Witness::None, |(u, v)| Witness::Pair { u, v, distance: diameter }),
        });
    }
    for (u, v) in g.edges() {
        let ((a, b), (c, d)) = (h.label(u), h.label(v));
        if a == c || b == d {
            failures.push(Failure {
                check: Check::LabelAdjacency,
                message: format!("({a},{b}) is adjacent to ({c},{d})"),
                witness: Witness::Pair { u, v, distance: Metric::Finite(1) },
            });
        }
    }
    let dist = g.distance_matrix();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let ((a, b), (c, d)) = (h.label(u), h.label(v));
            if (a == c || b == d) && dist[u][v] < 3 {
                failures.push(Failure {
                    check: Check::LabelDistance,
                    message: format!("({a},{b}) and ({c},{d}) share a coordinate at distance {}", dist[u][v]),
                    witness: Witness::Pair { u, v, distance: Metric::Finite(dist[u][v] as usize) },
                });
            }
        }
    }
    CageReport::from_failures(g, regular, girth, diameter, failures)
}

/// Vertex indices used by [`extend_middle`].
pub struct ExtensionLayout {
    pub k: usize,
}

impl ExtensionLayout {
    pub fn r(&self) -> usize {
        0
    }
    pub fn r_i(&self, i: usize) -> usize {
        1 + i
    }
    pub fn c(&self) -> usize {
        self.k + 1
    }
    pub fn c_j(&self, j: usize) -> usize {
        self.k + 2 + j
    }
    pub fn middle(&self, v: usize) -> usize {
        2 * self.k + 2 + v
    }
}

/// Builds the (k;5,4)-graph of order k^2+k+2 around a valid middle graph:
/// `r = 0`, `r_i = 1 + i`, `c = k + 1`, `c_j = k + 2 + j`, then the middle
/// vertices in label order.
pub fn extend_middle(h: &MiddleGraph) -> Result<Graph, CageError> {
    let k = h.k();
    if k < 3 {
        return Err(CageError::DegreeTooSmall(k, 3));
    }
    let report = check_middle(h);
    if !report.passed() {
        return Err(CageError::MiddleCheckFailed(report.summary()));
    }
    let lay = ExtensionLayout { k };
    let mut edges = Vec::with_capacity(k * (k + 1) + h.graph().edge_count());
    for i in 0..k {
        edges.push((lay.r(), lay.r_i(i)));
        edges.push((lay.c(), lay.c_j(i)));
    }
    for v in 0..h.graph().order() {
        let (i, j) = h.label(v);
        edges.push((lay.r_i(i), lay.middle(v)));
        edges.push((lay.c_j(j), lay.middle(v)));
    }
    edges.extend(h.graph().edges().map(|(u, v)| (lay.middle(u), lay.middle(v))));
    Ok(Graph::from_edges(moore_bound(k)?, edges)?)
}
