//! BFS distances, girth and diameter.

use super::{Graph, GraphError};
use std::fmt;

/// A nonnegative length, or `Infinite` for the girth of a forest and the
/// distance between vertices in different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Finite(usize),
    Infinite,
}

impl Metric {
    pub fn finite(self) -> Option<usize> {
        match self {
            Metric::Finite(v) => Some(v),
            Metric::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Metric::Infinite
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Finite(v) => write!(f, "{v}"),
            Metric::Infinite => f.write_str("inf"),
        }
    }
}

const UNREACHED: u32 = u32::MAX;

impl Graph {
    /// Raw BFS distances with `u32::MAX` for unreachable vertices.
    pub(crate) fn bfs_raw(&self, source: usize, out: &mut Vec<u32>) {
        let w = self.words;
        out.clear();
        out.resize(self.n, UNREACHED);
        let mut visited = vec![0u64; w];
        let mut frontier = vec![0u64; w];
        let mut next = vec![0u64; w];
        visited[source / 64] |= 1 << (source % 64);
        frontier[source / 64] |= 1 << (source % 64);
        out[source] = 0;
        let mut depth = 0;
        loop {
            next.iter_mut().for_each(|x| *x = 0);
            for v in super::BitIter::new(&frontier) {
                for (nx, r) in next.iter_mut().zip(self.row(v)) {
                    *nx |= r;
                }
            }
            let mut any = false;
            for (nx, vis) in next.iter_mut().zip(visited.iter_mut()) {
                *nx &= !*vis;
                *vis |= *nx;
                any |= *nx != 0;
            }
            if !any {
                break;
            }
            depth += 1;
            for v in super::BitIter::new(&next) {
                out[v] = depth;
            }
            std::mem::swap(&mut frontier, &mut next);
        }
    }

    /// Exact BFS distances from `v`.
    pub fn distances_from(&self, v: usize) -> Result<Vec<Metric>, GraphError> {
        self.check_vertex(v)?;
        let mut raw = Vec::new();
        self.bfs_raw(v, &mut raw);
        Ok(raw.into_iter().map(to_metric).collect())
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<Metric, GraphError> {
        self.check_vertex(v)?;
        Ok(self.distances_from(u)?[v])
    }

    /// All-pairs distance matrix (row-major, `u32::MAX` = unreachable).
    pub fn distance_matrix(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|v| {
                let mut row = Vec::new();
                self.bfs_raw(v, &mut row);
                row
            })
            .collect()
    }

    /// A shortest cycle as a vertex sequence, or `None` for a forest.
    pub fn shortest_cycle(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        let mut best: Option<(usize, usize, usize, usize)> = None; // (len, root, u, w)
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = UNREACHED);
            queue.clear();
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.push(root);
            let mut head = 0;
            'bfs: while head < queue.len() {
                let u = queue[head];
                head += 1;
                if let Some((len, ..)) = best {
                    // Cycles closed from here on have length >= 2*dist[u].
                    if 2 * dist[u] as usize >= len {
                        break 'bfs;
                    }
                }
                for w in self.neighbors(u) {
                    if dist[w] == UNREACHED {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push(w);
                    } else if parent[u] != w {
                        let len = (dist[u] + dist[w] + 1) as usize;
                        if best.is_none_or(|(b, ..)| len < b) {
                            best = Some((len, root, u, w));
                        }
                    }
                }
            }
            if best.is_some_and(|(b, ..)| b == 3) {
                break;
            }
        }
        let (_, root, u, w) = best?;
        // Rebuild the tree for the winning root and splice the two branches.
        dist.iter_mut().for_each(|d| *d = UNREACHED);
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for y in self.neighbors(x) {
                if dist[y] == UNREACHED {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push(y);
                }
            }
        }
        let (mut a, mut b) = (u, w);
        while a != b {
            if dist[a] >= dist[b] {
                a = parent[a];
            } else {
                b = parent[b];
            }
        }
        let apex = a;
        let mut cycle = vec![u];
        while *cycle.last().unwrap() != apex {
            cycle.push(parent[*cycle.last().unwrap()]);
        }
        cycle.reverse();
        let mut x = w;
        while x != apex {
            cycle.push(x);
            x = parent[x];
        }
        Some(cycle)
    }

    /// Length of a shortest cycle.
    pub fn girth(&self) -> Metric {
        self.shortest_cycle().map_or(Metric::Infinite, |c| Metric::Finite(c.len()))
    }

    /// Largest eccentricity, `Infinite` when disconnected; 0 for `n <= 1`.
    pub fn diameter(&self) -> Metric {
        self.diameter_witness().0
    }

    /// The diameter together with a pair realising it (first such pair in
    /// BFS-source order).
    pub fn diameter_witness(&self) -> (Metric, Option<(usize, usize)>) {
        let mut best = 0u32;
        let mut pair = None;
        let mut raw = Vec::new();
        for u in 0..self.n {
            self.bfs_raw(u, &mut raw);
            for (v, &d) in raw.iter().enumerate() {
                if d > best {
                    best = d;
                    pair = Some((u, v));
                    if d == UNREACHED {
                        return (Metric::Infinite, pair);
                    }
                }
            }
        }
        (Metric::Finite(best as usize), pair)
    }
}

pub(crate) fn to_metric(d: u32) -> Metric {
    if d == UNREACHED {
        Metric::Infinite
    } else {
        Metric::Finite(d as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn two_edges() -> Graph {
        Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()
    }

    fn heawood() -> Graph {
        // LCF [5,-5]^7
        let mut edges: Vec<(usize, usize)> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
        for i in (0..14).step_by(2) {
            edges.push((i, (i + 5) % 14));
        }
        Graph::from_edges(14, edges).unwrap()
    }

    /// Girth oracle: min over edges {u,v} of 1 + dist(u,v) in G minus that edge.
    fn girth_oracle(g: &Graph) -> Metric {
        let mut best = Metric::Infinite;
        for (u, v) in g.edges().collect::<Vec<_>>() {
            let h = Graph::from_edges(g.order(), g.edges().filter(|&e| e != (u, v))).unwrap();
            if let Metric::Finite(d) = h.distance(u, v).unwrap() {
                best = best.min(Metric::Finite(d + 1));
            }
        }
        best
    }

    fn floyd_warshall_diameter(g: &Graph) -> Metric {
        let n = g.order();
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (u, v) in g.edges() {
            d[u][v] = 1;
            d[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        let m = d.iter().flatten().copied().max().unwrap_or(0);
        if m >= inf {
            Metric::Infinite
        } else {
            Metric::Finite(m)
        }
    }

    pub(crate) fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn c5_metrics() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.girth(), Metric::Finite(5));
        assert_eq!(c5.diameter(), Metric::Finite(2));
        let d: Vec<_> = c5.distances_from(0).unwrap().into_iter().map(|m| m.finite().unwrap()).collect();
        assert_eq!(d, vec![0, 1, 2, 2, 1]);
    }

    #[test]
    fn forest_and_disconnected() {
        assert_eq!(Graph::path(4).unwrap().girth(), Metric::Infinite);
        let g = two_edges();
        assert_eq!(g.diameter(), Metric::Infinite);
        assert_eq!(
            g.distances_from(0).unwrap(),
            vec![Metric::Finite(0), Metric::Finite(1), Metric::Infinite, Metric::Infinite]
        );
        assert!(g.distances_from(4).is_err());
    }

    #[test]
    fn trivial_orders() {
        assert_eq!(Graph::empty(0).unwrap().diameter(), Metric::Finite(0));
        assert_eq!(Graph::empty(1).unwrap().diameter(), Metric::Finite(0));
        assert_eq!(Graph::empty(2).unwrap().diameter(), Metric::Infinite);
    }

    #[test]
    fn petersen_and_heawood() {
        let p = Graph::petersen();
        assert_eq!(girth_oracle(&p), Metric::Finite(5));
        assert_eq!(p.girth(), Metric::Finite(5));
        assert_eq!(p.diameter(), Metric::Finite(2));
        let h = heawood();
        assert_eq!(h.girth(), Metric::Finite(6));
        assert_eq!(h.diameter(), Metric::Finite(3));
        for v in 0..14 {
            let ecc = h.distances_from(v).unwrap().into_iter().max().unwrap();
            assert_eq!(ecc, Metric::Finite(3));
        }
    }

    #[test]
    fn infinite_is_largest() {
        assert!(Metric::Infinite > Metric::Finite(usize::MAX));
        assert!(Metric::Finite(3) < Metric::Finite(4));
    }

    #[test]
    fn shortest_cycle_is_a_cycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(3..14);
            let g = random_graph(&mut rng, n, 0.3);
            if let Some(c) = g.shortest_cycle() {
                let mut sorted = c.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), c.len());
                for i in 0..c.len() {
                    assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
        }
    }

    #[test]
    fn oracles_agree_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..500 {
            let n = rng.gen_range(0..=10);
            let p = rng.gen_range(0.05..0.7);
            let g = random_graph(&mut rng, n, p);
            assert_eq!(g.girth(), girth_oracle(&g), "{g:?}");
            assert_eq!(g.diameter(), floyd_warshall_diameter(&g), "{g:?}");
            if let Metric::Finite(girth) = g.girth() {
                assert!(girth >= 3);
            }
        }
    }

    #[test]
    fn triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 12, 0.2);
            let d = g.distance_matrix();
            for a in 0..12 {
                for b in 0..12 {
                    for c in 0..12 {
                        let via = d[a][b].saturating_add(d[b][c]);
                        assert!(d[a][c] <= via);
                    }
                }
            }
        }
    }
}
