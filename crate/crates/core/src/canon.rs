//! Canonical labeling and automorphism groups by individualization and
//! equitable refinement.
//!
//! The search tree is the usual one: each node is an equitable ordered
//! partition, children individualize one vertex of the target cell (the first
//! largest non-singleton cell). Each refinement emits a trace hash; the
//! canonical leaf is the one maximising (trace sequence, relabeled adjacency).
//! Automorphisms found by comparing leaves with the first and best leaves are
//! used for orbit pruning, and the group order is accumulated along the first
//! path as a product of stabiliser orbit lengths.

use crate::graph::{decode_graph6, encode_graph6, BitIter, Graph};
use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;

/// graph6 encoding of the canonically relabeled graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn to_graph(&self) -> Graph {
        decode_graph6(self.0.as_bytes()).expect("canonical forms are valid graph6")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutReport {
    pub order: BigUint,
    /// Each generator maps vertex `v` to `g[v]`.
    pub generators: Vec<Vec<usize>>,
}

impl AutReport {
    /// The order as a `u64`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }
}

#[derive(Clone, Debug)]
pub struct Canonical {
    /// `labeling[v]` is the canonical index of vertex `v`.
    pub labeling: Vec<usize>,
    pub form: CanonicalForm,
    pub aut: AutReport,
    /// Orbit representative (least vertex) of every vertex under the full group.
    pub orbits: Vec<usize>,
}

pub fn canonize(g: &Graph) -> Canonical {
    Search::new(g).run()
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonize(g).form
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && g.edge_count() == h.edge_count() && canonical_form(g) == canonical_form(h)
}

pub fn aut_order(g: &Graph) -> AutReport {
    canonize(g).aut
}

/// True iff `perm` maps the edge set of `g` onto itself.
pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    perm.len() == g.order() && g.edges().all(|(u, v)| g.has_edge(perm[u], perm[v]))
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h.rotate_left(5) ^ x).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[derive(Clone)]
struct Partition {
    lab: Vec<usize>,
    /// Start index of the cell containing each vertex.
    cell_of: Vec<usize>,
    /// Cell length, valid at cell start indices.
    len: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut len = vec![0; n];
        if n > 0 {
            len[0] = n;
        }
        Partition {
            lab: (0..n).collect(),
            cell_of: vec![0; n],
            len,
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|b| l > self.len[b]) {
                best = Some(s);
            }
            s += l;
        }
        best
    }

    /// Moves `v` to the front of its cell and splits it off. Returns the start
    /// of the new singleton cell.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v];
        let l = self.len[s];
        let pos = self.lab[s..s + l].iter().position(|&x| x == v).unwrap() + s;
        self.lab.swap(s, pos);
        self.len[s] = 1;
        self.len[s + 1] = l - 1;
        for &x in &self.lab[s + 1..s + l] {
            self.cell_of[x] = s + 1;
        }
        self.cells += 1;
        s
    }
}

struct Leaf {
    lab: Vec<usize>,
    cert: Vec<u64>,
    traces: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'g> {
    g: &'g Graph,
    n: usize,
    words: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    /// Stabiliser orbit length at each level of the first path.
    orbit_lengths: Vec<usize>,
    scratch_counts: Vec<u32>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        Search {
            g,
            n: g.order(),
            words: g.words(),
            first: None,
            best: None,
            generators: Vec::new(),
            orbit_lengths: Vec::new(),
            scratch_counts: vec![0; g.order()],
        }
    }

    fn run(mut self) -> Canonical {
        let n = self.n;
        let mut root = Partition::unit(n);
        if n > 0 {
            let trace = self.refine(&mut root, vec![0]);
            let mut traces = vec![trace];
            let mut path = Vec::new();
            self.explore(&root, &mut traces, &mut path);
        }
        let order = self.orbit_lengths.iter().fold(BigUint::from(1u32), |acc, &l| acc * BigUint::from(l));
        let best_lab = self.best.as_ref().map(|b| b.lab.clone()).unwrap_or_default();
        let mut labeling = vec![0; n];
        for (i, &v) in best_lab.iter().enumerate() {
            labeling[v] = i;
        }
        let relabeled = self.g.relabel(&labeling).expect("labeling is a permutation");
        let mut uf = UnionFind::new(n);
        for gen in &self.generators {
            for (v, &w) in gen.iter().enumerate() {
                uf.union(v, w);
            }
        }
        let orbits = (0..n).map(|v| uf.min_of(v)).collect();
        Canonical {
            labeling,
            form: CanonicalForm(encode_graph6(&relabeled)),
            aut: AutReport { order, generators: self.generators },
            orbits,
        }
    }

    /// Equitable refinement driven by a FIFO of splitter cells.
    fn refine(&mut self, p: &mut Partition, mut queue: Vec<usize>) -> u64 {
        let n = self.n;
        let w = self.words;
        let mut trace = 0u64;
        let mut in_queue = vec![false; n];
        for &s in &queue {
            in_queue[s] = true;
        }
        let mut head = 0;
        let mut splitter = vec![0u64; w];
        while head < queue.len() && !p.is_discrete() {
            let ws = queue[head];
            head += 1;
            in_queue[ws] = false;
            splitter.iter_mut().for_each(|x| *x = 0);
            for &v in &p.lab[ws..ws + p.len[ws]] {
                splitter[v / 64] |= 1 << (v % 64);
            }
            trace = mix(trace, (ws as u64) << 32 | p.len[ws] as u64);
            let mut s = 0;
            while s < n {
                let l = p.len[s];
                if l > 1 {
                    let counts = &mut self.scratch_counts;
                    let mut uniform = true;
                    for &v in &p.lab[s..s + l] {
                        let row = self.g.row(v);
                        counts[v] = row.iter().zip(&splitter).map(|(a, b)| (a & b).count_ones()).sum();
                    }
                    let c0 = counts[p.lab[s]];
                    for &v in &p.lab[s + 1..s + l] {
                        if counts[v] != c0 {
                            uniform = false;
                            break;
                        }
                    }
                    if !uniform {
                        let cell = &mut p.lab[s..s + l];
                        cell.sort_by_key(|&v| counts[v]);
                        let mut start = s;
                        trace = mix(trace, s as u64);
                        for i in s + 1..=s + l {
                            if i == s + l || counts[p.lab[i]] != counts[p.lab[i - 1]] {
                                let frag = i - start;
                                p.len[start] = frag;
                                for &x in &p.lab[start..i] {
                                    p.cell_of[x] = start;
                                }
                                trace = mix(trace, (counts[p.lab[start]] as u64) << 32 | frag as u64);
                                if !in_queue[start] {
                                    in_queue[start] = true;
                                    queue.push(start);
                                }
                                start = i;
                                if i < s + l {
                                    p.cells += 1;
                                }
                            }
                        }
                    }
                }
                s += l;
            }
        }
        mix(trace, p.cells as u64)
    }

    fn certificate(&self, lab: &[usize]) -> Vec<u64> {
        let mut pos = vec![0usize; self.n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let w = self.words;
        let mut cert = vec![0u64; self.n * w];
        for (i, &v) in lab.iter().enumerate() {
            for u in BitIter::new(self.g.row(v)) {
                let j = pos[u];
                cert[i * w + j / 64] |= 1 << (j % 64);
            }
        }
        cert
    }

    /// Orbits of the subgroup generated by the known generators that fix
    /// every vertex of `prefix`.
    fn stabilizer_orbits(&self, prefix: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for gen in &self.generators {
            if prefix.iter().all(|&v| gen[v] == v) {
                for (v, &w) in gen.iter().enumerate() {
                    uf.union(v, w);
                }
            }
        }
        uf
    }

    fn record_automorphism(&mut self, from: &[usize], to: &[usize]) {
        let mut gen = vec![0; self.n];
        for (&a, &b) in from.iter().zip(to) {
            gen[a] = b;
        }
        if gen.iter().enumerate().any(|(v, &w)| v != w) {
            debug_assert!(is_automorphism(self.g, &gen));
            self.generators.push(gen);
        }
    }

    /// Returns `Some(level)` to unwind the recursion to the node at `level`.
    fn explore(&mut self, node: &Partition, traces: &mut Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        let level = path.len();
        if node.is_discrete() {
            return self.visit_leaf(node, traces, path);
        }
        let target = node.target_cell().expect("non-discrete partition has a target cell");
        let mut children: Vec<usize> = node.lab[target..target + node.len[target]].to_vec();
        children.sort_unstable();
        let on_first = self.first.as_ref().is_none_or(|f| f.path.len() > level && f.path[..level] == path[..]);
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits_seen = self.generators.len();
        let mut uf = self.stabilizer_orbits(path);
        for &w in &children {
            if self.generators.len() != orbits_seen {
                uf = self.stabilizer_orbits(path);
                orbits_seen = self.generators.len();
            }
            if explored.iter().any(|&x| uf.same(x, w)) {
                continue;
            }
            explored.push(w);
            let mut child = node.clone();
            let s = child.individualize(w);
            let t = self.refine(&mut child, vec![s]);
            traces.push(t);
            path.push(w);
            let keep = self.first.is_none() || self.matches_first(traces) || self.compare_best(traces) != Ordering::Less;
            let jump = if keep { self.explore(&child, traces, path) } else { None };
            traces.pop();
            path.pop();
            if let Some(l) = jump {
                if l < level {
                    return Some(l);
                }
            }
        }
        if on_first {
            let first_path = self.first.as_ref().expect("first leaf exists").path.clone();
            let mut uf = self.stabilizer_orbits(&first_path[..level]);
            let v = first_path[level];
            let orbit_len = (0..self.n).filter(|&x| uf.same(x, v)).count();
            if self.orbit_lengths.len() <= level {
                self.orbit_lengths.resize(level + 1, 1);
            }
            self.orbit_lengths[level] = orbit_len;
        }
        None
    }

    fn matches_first(&self, traces: &[u64]) -> bool {
        let f = &self.first.as_ref().unwrap().traces;
        f.len() >= traces.len() && f[..traces.len()] == *traces
    }

    fn compare_best(&self, traces: &[u64]) -> Ordering {
        let b = &self.best.as_ref().unwrap().traces;
        let m = traces.len().min(b.len());
        traces[..m].cmp(&b[..m])
    }

    fn visit_leaf(&mut self, node: &Partition, traces: &[u64], path: &[usize]) -> Option<usize> {
        let cert = self.certificate(&node.lab);
        let leaf = Leaf {
            lab: node.lab.clone(),
            cert,
            traces: traces.to_vec(),
            path: path.to_vec(),
        };
        let Some(first) = self.first.as_ref() else {
            self.best = Some(Leaf { lab: leaf.lab.clone(), cert: leaf.cert.clone(), traces: leaf.traces.clone(), path: leaf.path.clone() });
            self.first = Some(leaf);
            return None;
        };
        if first.traces == leaf.traces && first.cert == leaf.cert {
            let from = first.lab.clone();
            let common = common_prefix(&first.path, path);
            self.record_automorphism(&from, &leaf.lab);
            return Some(common);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.traces.cmp(&best.traces).then_with(|| leaf.cert.cmp(&best.cert)) {
            Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            Ordering::Equal => {
                let from = best.lab.clone();
                let common = common_prefix(&best.path, path);
                self.record_automorphism(&from, &leaf.lab);
                Some(common)
            }
            Ordering::Less => None,
        }
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    fn min_of(&mut self, v: usize) -> usize {
        self.find(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
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

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    /// Counts automorphisms by backtracking over partial vertex maps.
    fn brute_aut_count(g: &Graph) -> u64 {
        fn go(g: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
            let v = map.len();
            if v == g.order() {
                return 1;
            }
            let mut total = 0;
            for w in 0..g.order() {
                if used[w] || g.degree(w) != g.degree(v) {
                    continue;
                }
                if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(map[u], w)) {
                    used[w] = true;
                    map.push(w);
                    total += go(g, map, used);
                    map.pop();
                    used[w] = false;
                }
            }
            total
        }
        go(g, &mut Vec::new(), &mut vec![false; g.order()])
    }

    fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
        fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let v = map.len();
            if v == g.order() {
                return true;
            }
            for w in 0..h.order() {
                if !used[w] && (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w)) {
                    used[w] = true;
                    map.push(w);
                    if go(g, h, map, used) {
                        return true;
                    }
                    map.pop();
                    used[w] = false;
                }
            }
            false
        }
        g.order() == h.order() && g.edge_count() == h.edge_count() && go(g, h, &mut Vec::new(), &mut vec![false; h.order()])
    }

    #[test]
    fn cycle_and_petersen_groups() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(aut_order(&c5).order_u64(), Some(10));
        let p = Graph::petersen();
        assert_eq!(brute_aut_count(&p), 120);
        let rep = aut_order(&p);
        assert_eq!(rep.order_u64(), Some(120));
        assert!(rep.generators.iter().all(|gen| is_automorphism(&p, gen)));
    }

    #[test]
    fn degenerate_graphs() {
        assert_eq!(aut_order(&Graph::empty(0).unwrap()).order_u64(), Some(1));
        assert_eq!(aut_order(&Graph::empty(1).unwrap()).order_u64(), Some(1));
        assert_eq!(aut_order(&Graph::empty(6).unwrap()).order_u64(), Some(720));
        let k6 = Graph::from_edges(6, (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b)))).unwrap();
        assert_eq!(aut_order(&k6).order_u64(), Some(720));
        // 40! does not fit in 64 bits
        let big = aut_order(&Graph::empty(40).unwrap()).order;
        assert_eq!(big, (1..=40u32).map(BigUint::from).product::<BigUint>());
    }

    #[test]
    fn relabeling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c5 = Graph::cycle(5).unwrap();
        let form = canonical_form(&c5);
        for _ in 0..20 {
            let p = random_perm(&mut rng, 5);
            assert_eq!(canonical_form(&c5.relabel(&p).unwrap()), form);
        }
        let pet = Graph::petersen();
        let form = canonical_form(&pet);
        for _ in 0..100 {
            let p = random_perm(&mut rng, 10);
            assert_eq!(canonical_form(&pet.relabel(&p).unwrap()), form);
        }
    }

    #[test]
    fn canonical_form_is_isomorphic_copy() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = random_graph(&mut rng, 9, 0.4);
            let c = canonize(&g);
            assert_eq!(g.relabel(&c.labeling).unwrap(), c.form.to_graph());
        }
    }

    #[test]
    fn distinguishes_small_graphs() {
        let c6 = Graph::cycle(6).unwrap();
        let triangles = Graph::cycle(3).unwrap().disjoint_union(&Graph::cycle(3).unwrap()).unwrap();
        assert!(!are_isomorphic(&c6, &triangles));
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&c5, &c5.relabel(&[2, 4, 1, 0, 3]).unwrap()));
    }

    #[test]
    fn aut_order_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..400 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let rep = aut_order(&g);
            assert_eq!(rep.order_u64(), Some(brute_aut_count(&g)), "{g:?}");
            assert!(rep.generators.iter().all(|gen| is_automorphism(&g, gen)));
        }
    }

    #[test]
    fn isomorphism_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..400 {
            let n = rng.gen_range(1..=6);
            let g = random_graph(&mut rng, n, 0.5);
            let h = if rng.gen_bool(0.5) {
                g.relabel(&random_perm(&mut rng, n)).unwrap()
            } else {
                random_graph(&mut rng, n, 0.5)
            };
            assert_eq!(are_isomorphic(&g, &h), brute_isomorphic(&g, &h), "{g:?} {h:?}");
        }
    }

    #[test]
    fn orbits_of_disjoint_union() {
        let g = Graph::cycle(5).unwrap().disjoint_union(&Graph::path(3).unwrap()).unwrap();
        let c = canonize(&g);
        assert_eq!(c.orbits, vec![0, 0, 0, 0, 0, 5, 6, 5]);
        assert_eq!(c.aut.order_u64(), Some(20));
    }
}
