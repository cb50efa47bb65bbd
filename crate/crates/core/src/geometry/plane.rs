//! The Desarguesian projective plane PG(2, q) and its Levi graph.

use super::field::{gf, FiniteField};
use super::GeometryError;
use crate::graph::Graph;

/// Points and lines are normalised homogeneous triples (first nonzero
/// coordinate 1) in lexicographic order; the same list serves for both.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    field: FiniteField,
    triples: Vec<[usize; 3]>,
    /// `on_line[l]` lists the points of line `l` in increasing order.
    on_line: Vec<Vec<usize>>,
    /// `through[p]` lists the lines through point `p` in increasing order.
    through: Vec<Vec<usize>>,
}

impl ProjectivePlane {
    pub fn new(q: usize) -> Result<Self, GeometryError> {
        let field = gf(q)?;
        let mut triples = Vec::with_capacity(q * q + q + 1);
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let first = [a, b, c].into_iter().find(|&x| x != 0);
                    if first == Some(1) {
                        triples.push([a, b, c]);
                    }
                }
            }
        }
        let n = triples.len();
        let mut on_line = vec![Vec::with_capacity(q + 1); n];
        let mut through = vec![Vec::with_capacity(q + 1); n];
        for (l, lt) in triples.iter().enumerate() {
            for (p, pt) in triples.iter().enumerate() {
                let dot = (0..3).fold(0, |acc, i| field.add(acc, field.mul(lt[i], pt[i])));
                if dot == 0 {
                    on_line[l].push(p);
                    through[p].push(l);
                }
            }
        }
        Ok(ProjectivePlane { field, triples, on_line, through })
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Number of points, which equals the number of lines.
    pub fn size(&self) -> usize {
        self.triples.len()
    }

    pub fn point(&self, p: usize) -> [usize; 3] {
        self.triples[p]
    }

    pub fn line(&self, l: usize) -> [usize; 3] {
        self.triples[l]
    }

    /// Index of a normalised triple.
    pub fn index_of(&self, t: [usize; 3]) -> Option<usize> {
        self.triples.binary_search(&t).ok()
    }

    /// Scales a nonzero triple so its first nonzero coordinate is 1.
    pub fn normalize(&self, t: [usize; 3]) -> Option<[usize; 3]> {
        let q = self.order();
        if t.iter().any(|&x| x >= q) {
            return None;
        }
        let s = self.field.inv(t.into_iter().find(|&x| x != 0)?)?;
        Some(t.map(|x| self.field.mul(x, s)))
    }

    /// Index of the point or line spanned by any nonzero triple.
    pub fn locate(&self, t: [usize; 3]) -> Option<usize> {
        self.index_of(self.normalize(t)?)
    }

    pub fn incident(&self, p: usize, l: usize) -> bool {
        self.on_line[l].binary_search(&p).is_ok()
    }

    pub fn points_on(&self, l: usize) -> &[usize] {
        &self.on_line[l]
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.through[p]
    }

    /// The line through two distinct points.
    pub fn join(&self, p: usize, r: usize) -> Option<usize> {
        if p == r {
            return None;
        }
        self.through[p].iter().copied().find(|&l| self.incident(r, l))
    }

    /// The point on two distinct lines.
    pub fn meet(&self, l: usize, m: usize) -> Option<usize> {
        if l == m {
            return None;
        }
        self.on_line[l].iter().copied().find(|&p| self.incident(p, m))
    }
}

pub fn pg2(q: usize) -> Result<ProjectivePlane, GeometryError> {
    ProjectivePlane::new(q)
}

/// Point-line incidence graph: points are `0..N`, lines `N..2N`.
pub fn levi(pi: &ProjectivePlane) -> Graph {
    let n = pi.size();
    let edges = (0..n).flat_map(|l| pi.points_on(l).iter().map(move |&p| (p, n + l)));
    Graph::from_edges(2 * n, edges).expect("incidence edges are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_counts() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let pi = pg2(q).unwrap();
            assert_eq!(pi.size(), q * q + q + 1);
            for x in 0..pi.size() {
                assert_eq!(pi.points_on(x).len(), q + 1);
                assert_eq!(pi.lines_through(x).len(), q + 1);
            }
        }
    }

    #[test]
    fn two_points_one_line() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let pi = pg2(q).unwrap();
            for a in 0..pi.size() {
                for b in a + 1..pi.size() {
                    let common = pi.lines_through(a).iter().filter(|&&l| pi.incident(b, l)).count();
                    assert_eq!(common, 1, "q={q} points {a},{b}");
                }
            }
        }
    }

    #[test]
    fn join_and_meet() {
        let pi = pg2(3).unwrap();
        let l = pi.join(0, 5).unwrap();
        assert!(pi.incident(0, l) && pi.incident(5, l));
        let p = pi.meet(0, 7).unwrap();
        assert!(pi.incident(p, 0) && pi.incident(p, 7));
        assert_eq!(pi.join(2, 2), None);
        assert_eq!(pi.index_of([0, 1, 0]), Some(1));
        assert_eq!(pi.index_of([0, 2, 0]), None);
        assert_eq!(pi.locate([0, 2, 0]), Some(1));
        assert_eq!(pi.normalize([2, 1, 0]), Some([1, 2, 0]));
        assert_eq!(pi.normalize([0, 0, 0]), None);
    }

    #[test]
    fn fano_levi_is_heawood() {
        let h = levi(&pg2(2).unwrap());
        assert_eq!(h.order(), 14);
        assert!(h.is_regular(3));
        assert_eq!(h.girth(), crate::graph::Metric::Finite(6));
        assert_eq!(h.diameter(), crate::graph::Metric::Finite(3));
    }
}
