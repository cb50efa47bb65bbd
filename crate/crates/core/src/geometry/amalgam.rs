//! Amalgamation: class-internal edges added to a biaffine Levi graph.

use super::biaffine::{BiaffineLevi, ClassKind};
use super::GeometryError;
use crate::cage::{verify_gd_graph, CageParams};
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::Graph;
use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};

/// Auxiliary edges for one class, with vertex indices local to the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEdges {
    pub kind: ClassKind,
    pub index: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Auxiliary edges in global vertex indices of the biaffine graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AmalgamSpec {
    pub edges: Vec<(usize, usize)>,
}

impl AmalgamSpec {
    pub fn from_classes(b: &BiaffineLevi, classes: &[ClassEdges]) -> Result<Self, GeometryError> {
        let mut edges = Vec::new();
        for c in classes {
            let members = b
                .classes(c.kind)
                .get(c.index)
                .ok_or(GeometryError::ClassOutOfRange { kind: c.kind, index: c.index })?;
            for &(u, v) in &c.edges {
                let map = |x: usize| {
                    members.get(x).copied().ok_or(GeometryError::LocalVertexOutOfRange { vertex: x, size: members.len() })
                };
                edges.push((map(u)?, map(v)?));
            }
        }
        Ok(AmalgamSpec { edges })
    }
}

/// Adds the auxiliary edges; every vertex must end with the same degree.
pub fn amalgamate(b: &BiaffineLevi, spec: &AmalgamSpec) -> Result<Graph, GeometryError> {
    for &(u, v) in &spec.edges {
        let (cu, cv) = (b.class_of(u), b.class_of(v));
        if cu.is_none() || cu != cv {
            return Err(GeometryError::CrossClass { u, v });
        }
    }
    let g = b.graph.with_edges(spec.edges.iter().copied())?;
    let expected = g.degree(0);
    if let Some(v) = (0..g.order()).find(|&v| g.degree(v) != expected) {
        return Err(GeometryError::NonUniformDegree { vertex: v, degree: g.degree(v), expected });
    }
    Ok(g)
}

/// All `a`-regular graphs on the labelled vertex set `0..s`.
pub fn regular_graphs(s: usize, a: usize) -> Result<Vec<Vec<(usize, usize)>>, GeometryError> {
    if a == 0 || a >= s || (a * s) % 2 == 1 {
        return Err(GeometryError::InfeasibleIncrement { a, size: s });
    }
    let mut out = Vec::new();
    let mut deg = vec![0; s];
    let mut edges = Vec::new();
    regular_rec(s, a, 0, 1, &mut deg, &mut edges, &mut out);
    Ok(out)
}

fn regular_rec(
    s: usize,
    a: usize,
    v: usize,
    from: usize,
    deg: &mut [usize],
    edges: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if v == s {
        out.push(edges.clone());
        return;
    }
    if deg[v] == a {
        regular_rec(s, a, v + 1, v + 2, deg, edges, out);
        return;
    }
    for w in from..s {
        if deg[w] < a {
            deg[v] += 1;
            deg[w] += 1;
            edges.push((v, w));
            regular_rec(s, a, v, w + 1, deg, edges, out);
            edges.pop();
            deg[v] -= 1;
            deg[w] -= 1;
        }
    }
}

#[derive(Debug, Clone)]
pub struct AmalgamSearch {
    /// Distinct graphs passing the target parameters, sorted by canonical form.
    pub graphs: Vec<(CanonicalForm, Graph)>,
    pub complete: bool,
    /// Number of full combinations reaching the final verification.
    pub leaves: u64,
    /// Size of the unpruned combination space (saturating).
    pub space: u128,
}

/// A class's members and its candidate edge sets (local indices).
type ClassChoice<'a> = (&'a [usize], &'a [Vec<(usize, usize)>]);

struct AmalgamState<'a> {
    adj: Vec<Vec<usize>>,
    choices: Vec<ClassChoice<'a>>,
    min_gap: usize,
    deadline: Option<Instant>,
    timed_out: bool,
    leaves: u64,
    params: CageParams,
    found: BTreeMap<CanonicalForm, Graph>,
}

impl AmalgamState<'_> {
    /// Whether `u` and `v` are within distance `< min_gap`.
    fn close(&self, u: usize, v: usize) -> bool {
        let mut seen = vec![usize::MAX; self.adj.len()];
        seen[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return true;
            }
            let d = seen[x];
            if d + 1 >= self.min_gap {
                continue;
            }
            for &y in &self.adj[x] {
                if seen[y] == usize::MAX {
                    seen[y] = d + 1;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    fn rec(&mut self, class: usize) {
        if self.timed_out {
            return;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
            return;
        }
        if class == self.choices.len() {
            self.leaves += 1;
            let edges = (0..self.adj.len()).flat_map(|u| self.adj[u].iter().filter(move |&&w| w > u).map(move |&w| (u, w)));
            let g = Graph::from_edges(self.adj.len(), edges).expect("indices in range");
            if verify_gd_graph(&g, self.params).passed() {
                self.found.entry(canonical_form(&g)).or_insert(g);
            }
            return;
        }
        let (members, options) = self.choices[class];
        for option in options {
            let mut added = 0;
            let mut ok = true;
            for &(x, y) in option {
                let (u, v) = (members[x], members[y]);
                if self.close(u, v) {
                    ok = false;
                    break;
                }
                self.adj[u].push(v);
                self.adj[v].push(u);
                added += 1;
            }
            if ok {
                self.rec(class + 1);
            }
            for &(x, y) in option[..added].iter().rev() {
                let (u, v) = (members[x], members[y]);
                self.adj[u].pop();
                self.adj[v].pop();
            }
            if self.timed_out {
                return;
            }
        }
    }
}

/// Tries every combination of `a`-regular class-internal graphs, cutting a
/// branch as soon as an inserted edge closes a cycle shorter than `params.g`.
pub fn search_amalgam(
    b: &BiaffineLevi,
    a: usize,
    params: CageParams,
    budget: Option<Duration>,
) -> Result<AmalgamSearch, GeometryError> {
    let mut by_size: BTreeMap<usize, Vec<Vec<(usize, usize)>>> = BTreeMap::new();
    for c in b.point_classes.iter().chain(&b.line_classes) {
        if let std::collections::btree_map::Entry::Vacant(e) = by_size.entry(c.len()) {
            e.insert(regular_graphs(c.len(), a)?);
        }
    }
    let choices: Vec<ClassChoice> =
        b.point_classes.iter().chain(&b.line_classes).map(|c| (c.as_slice(), by_size[&c.len()].as_slice())).collect();
    let space = choices.iter().fold(1u128, |acc, (_, o)| acc.saturating_mul(o.len() as u128));
    let n = b.graph.order();
    let adj = (0..n).map(|v| b.graph.neighbors(v).collect()).collect();
    let mut st = AmalgamState {
        adj,
        choices,
        min_gap: params.g.saturating_sub(1),
        deadline: budget.map(|d| Instant::now() + d),
        timed_out: false,
        leaves: 0,
        params,
        found: BTreeMap::new(),
    };
    st.rec(0);
    Ok(AmalgamSearch {
        graphs: st.found.into_iter().collect(),
        complete: !st.timed_out,
        leaves: st.leaves,
        space,
    })
}
