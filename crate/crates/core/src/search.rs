//! Isomorph-free enumeration of Moore-bound (k;5,4)-graphs through their
//! middle graphs.
//!
//! The middle graph lives on the `k(k-1)` labels `(i, j)`, `i != j`, and must
//! be `(k-2)`-regular with girth at least 5, such that the closed
//! neighbourhood of every vertex uses pairwise distinct rows and pairwise
//! distinct columns. (Distinct rows in `N[x]` is exactly "no edge and no
//! common neighbour between row-sharing vertices".) Vertices are completed in
//! label order; a vertex picks its remaining neighbours among later vertices.
//!
//! Partial assignments are checked against the label symmetry group (diagonal
//! `S_k`, optionally composed with the transpose): if some element maps the
//! determined part of the adjacency matrix to something lexicographically
//! larger, no completion can be the orbit maximum and the branch is cut. At
//! leaves the test is exact, so each orbit is emitted once. Cages are
//! deduplicated by canonical form afterwards, so completeness never depends on
//! the pruning.

use crate::cage::{moore_bound, verify_gd_graph, CageError, CageParams};
use crate::canon::{canonize, AutReport, CanonicalForm};
use crate::graph::Graph;
use crate::middle::{extend_middle, index_label, label_symmetries, MiddleGraph};
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Largest degree the bitmask search supports (k(k-1) <= 64).
pub const MAX_SEARCH_K: usize = 8;

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub k: usize,
    /// Stop once this many distinct cages are known.
    pub max_solutions: Option<usize>,
    pub time_budget: Option<Duration>,
    pub workers: usize,
    pub emit_middle_only: bool,
    /// Emit one middle per label-symmetry orbit. When false every labelled
    /// middle graph is emitted.
    pub orbit_pruning: bool,
}

impl SearchConfig {
    pub fn new(k: usize) -> Self {
        SearchConfig {
            k,
            max_solutions: None,
            time_budget: None,
            workers: 1,
            emit_middle_only: false,
            orbit_pruning: true,
        }
    }

    fn validate(&self) -> Result<(), CageError> {
        if self.k < 3 {
            return Err(CageError::DegreeTooSmall(self.k, 3));
        }
        if self.k > MAX_SEARCH_K {
            return Err(CageError::InvalidParams {
                k: self.k,
                g: 5,
                d: 4,
                reason: "middle search supports k <= 8",
            });
        }
        if self.workers == 0 {
            return Err(CageError::InvalidParams { k: self.k, g: 5, d: 4, reason: "workers must be at least 1" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub subtrees: usize,
    pub middles: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct MiddleRun {
    /// Orbit representatives, in search order.
    pub middles: Vec<MiddleGraph>,
    pub complete: bool,
    pub stats: SearchStats,
}

#[derive(Debug, Clone)]
pub struct CageEntry {
    pub form: CanonicalForm,
    /// The canonically labelled cage.
    pub graph: Graph,
    pub aut: AutReport,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Sorted by canonical form.
    pub cages: Vec<CageEntry>,
    /// `middles[i]` lists the emitted middle graphs whose extension is `cages[i]`.
    pub middles: Vec<Vec<MiddleGraph>>,
    pub complete: bool,
    pub stats: SearchStats,
}

/// Progress callback: `(subtrees finished, total subtrees)`.
pub type Progress<'a> = &'a (dyn Fn(usize, usize) + Sync);

struct Control {
    deadline: Option<Instant>,
    stop: AtomicBool,
    timed_out: AtomicBool,
    nodes: AtomicU64,
}

impl Control {
    fn new(budget: Option<Duration>) -> Self {
        Control {
            deadline: budget.map(|b| Instant::now() + b),
            stop: AtomicBool::new(false),
            timed_out: AtomicBool::new(false),
            nodes: AtomicU64::new(0),
        }
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }

    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local & 0xfff == 0 {
            self.nodes.fetch_add(0x1000, Ordering::Relaxed);
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                self.timed_out.store(true, Ordering::Relaxed);
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        !self.stopped()
    }
}

#[derive(Clone)]
struct State {
    adj: Vec<u64>,
    deg: Vec<u8>,
    /// Rows used by the closed neighbourhood of each vertex (bit r = row r).
    rows_used: Vec<u16>,
    cols_used: Vec<u16>,
    /// Vertices whose closed neighbourhood uses row r / column c.
    has_row: Vec<u64>,
    has_col: Vec<u64>,
    unsaturated: u64,
}

struct Symmetry {
    perm: Vec<u8>,
    inv: Vec<u8>,
}

struct Engine<'c> {
    k: usize,
    n: usize,
    target: u8,
    row: Vec<u8>,
    col: Vec<u8>,
    row_vertices: Vec<u64>,
    col_vertices: Vec<u64>,
    all: u64,
    group: Vec<Symmetry>,
    ctl: &'c Control,
}

#[inline]
fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

#[inline]
fn above(v: usize) -> u64 {
    if v >= 63 {
        0
    } else {
        !0u64 << (v + 1)
    }
}

impl<'c> Engine<'c> {
    fn new(k: usize, orbit_pruning: bool, ctl: &'c Control) -> Self {
        let n = k * (k - 1);
        let (mut row, mut col) = (vec![0u8; n], vec![0u8; n]);
        let (mut row_vertices, mut col_vertices) = (vec![0u64; k], vec![0u64; k]);
        for v in 0..n {
            let (i, j) = index_label(k, v);
            row[v] = i as u8;
            col[v] = j as u8;
            row_vertices[i] |= 1 << v;
            col_vertices[j] |= 1 << v;
        }
        let mut group = Vec::new();
        for (sigma, t) in label_symmetries(k).filter(|_| orbit_pruning) {
            let identity = !t && sigma.iter().enumerate().all(|(a, &b)| a == b);
            if identity {
                continue;
            }
            let mut perm = vec![0u8; n];
            for v in 0..n {
                let (i, j) = index_label(k, v);
                let (a, b) = if t { (sigma[j], sigma[i]) } else { (sigma[i], sigma[j]) };
                perm[v] = crate::middle::label_index(k, a, b) as u8;
            }
            let mut inv = vec![0u8; n];
            for (v, &w) in perm.iter().enumerate() {
                inv[w as usize] = v as u8;
            }
            group.push(Symmetry { perm, inv });
        }
        Engine {
            k,
            n,
            target: (k - 2) as u8,
            row,
            col,
            row_vertices,
            col_vertices,
            all: if n == 64 { !0 } else { (1u64 << n) - 1 },
            group,
            ctl,
        }
    }

    fn initial_state(&self) -> State {
        let n = self.n;
        let mut st = State {
            adj: vec![0; n],
            deg: vec![0; n],
            rows_used: vec![0; n],
            cols_used: vec![0; n],
            has_row: vec![0; self.k],
            has_col: vec![0; self.k],
            unsaturated: if self.target > 0 { self.all } else { 0 },
        };
        for v in 0..n {
            st.rows_used[v] = 1 << self.row[v];
            st.cols_used[v] = 1 << self.col[v];
            st.has_row[self.row[v] as usize] |= 1 << v;
            st.has_col[self.col[v] as usize] |= 1 << v;
        }
        st
    }

    /// Vertices within distance 3 of `v`, including `v`.
    #[inline]
    fn ball3(&self, st: &State, v: usize) -> u64 {
        let b1 = st.adj[v];
        let mut b2 = 0;
        for x in bits(b1) {
            b2 |= st.adj[x];
        }
        let mut b3 = 0;
        for y in bits(b2 & !b1) {
            b3 |= st.adj[y];
        }
        (1 << v) | b1 | b2 | b3
    }

    /// Vertices `w` that could currently be joined to `v`.
    #[inline]
    fn partners(&self, st: &State, v: usize) -> u64 {
        let mut blocked = self.ball3(st, v) | st.has_row[self.row[v] as usize] | st.has_col[self.col[v] as usize];
        for r in bits(st.rows_used[v] as u64) {
            blocked |= self.row_vertices[r];
        }
        for c in bits(st.cols_used[v] as u64) {
            blocked |= self.col_vertices[c];
        }
        st.unsaturated & !blocked
    }

    fn add_edge(&self, st: &mut State, v: usize, w: usize) {
        st.adj[v] |= 1 << w;
        st.adj[w] |= 1 << v;
        for (a, b) in [(v, w), (w, v)] {
            st.deg[a] += 1;
            if st.deg[a] == self.target {
                st.unsaturated &= !(1 << a);
            }
            st.rows_used[a] |= 1 << self.row[b];
            st.cols_used[a] |= 1 << self.col[b];
            st.has_row[self.row[b] as usize] |= 1 << a;
            st.has_col[self.col[b] as usize] |= 1 << a;
        }
    }

    fn remove_edge(&self, st: &mut State, v: usize, w: usize) {
        st.adj[v] &= !(1 << w);
        st.adj[w] &= !(1 << v);
        for (a, b) in [(v, w), (w, v)] {
            st.deg[a] -= 1;
            st.unsaturated |= 1 << a;
            st.rows_used[a] &= !(1 << self.row[b]);
            st.cols_used[a] &= !(1 << self.col[b]);
            st.has_row[self.row[b] as usize] &= !(1 << a);
            st.has_col[self.col[b] as usize] &= !(1 << a);
        }
    }

    #[inline]
    fn map_mask(perm: &[u8], m: u64) -> u64 {
        bits(m).fold(0, |acc, b| acc | 1 << perm[b])
    }

    /// False if some symmetry provably maps every completion of `st` to a
    /// lexicographically larger adjacency matrix. `complete` marks vertices
    /// whose rows are final.
    fn orderly(&self, st: &State, complete: u64) -> bool {
        let determined = complete | (self.all & !st.unsaturated);
        let n = self.n;
        'group: for g in &self.group {
            let mapped_det = Self::map_mask(&g.perm, determined);
            for a in 0..n {
                let tail = above(a) & self.all;
                let pre = g.inv[a] as usize;
                let own_det = if determined >> a & 1 == 1 { tail } else { determined & tail };
                let img_det = if determined >> pre & 1 == 1 { tail } else { mapped_det & tail };
                let both = own_det & img_det;
                let undecided = tail & !both;
                let window = if undecided == 0 { tail } else { (undecided & undecided.wrapping_neg()) - 1 };
                let own = st.adj[a] & tail;
                let img = Self::map_mask(&g.perm, st.adj[pre]) & tail;
                let diff = (own ^ img) & both & window;
                if diff != 0 {
                    let first = diff & diff.wrapping_neg();
                    if img & first != 0 {
                        return false;
                    }
                    continue 'group;
                }
                if undecided != 0 {
                    continue 'group;
                }
            }
        }
        true
    }

    /// Every unsaturated vertex after `v` still has enough possible partners.
    fn feasible(&self, st: &State, v: usize) -> bool {
        for u in bits(st.unsaturated & above(v)) {
            let need = (self.target - st.deg[u]) as u32;
            if (self.partners(st, u) & above(v)).count_ones() < need {
                return false;
            }
        }
        true
    }

    fn complete_through(v: usize) -> u64 {
        if v >= 63 {
            !0
        } else {
            (1u64 << (v + 1)) - 1
        }
    }

    /// Search from a state where vertices `0..v` are complete.
    fn run_from(&self, st: &mut State, v: usize, local: &mut u64, emit: &mut dyn FnMut(&State)) {
        if !self.ctl.tick(local) {
            return;
        }
        if v == self.n {
            if self.orderly(st, self.all) {
                emit(st);
            }
            return;
        }
        if st.deg[v] == self.target {
            if !self.orderly(st, Self::complete_through(v)) || !self.feasible(st, v) {
                return;
            }
            self.run_from(st, v + 1, local, emit);
            return;
        }
        self.choose(st, v, v + 1, local, emit);
    }

    fn choose(&self, st: &mut State, v: usize, start: usize, local: &mut u64, emit: &mut dyn FnMut(&State)) {
        let need = (self.target - st.deg[v]) as u32;
        let mut cand = self.partners(st, v) & if start == 0 { !0 } else { above(start - 1) };
        while cand.count_ones() >= need && cand != 0 {
            if self.ctl.stopped() {
                return;
            }
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.add_edge(st, v, w);
            if st.deg[v] == self.target {
                self.run_from(st, v, local, emit);
            } else {
                self.choose(st, v, w + 1, local, emit);
            }
            self.remove_edge(st, v, w);
        }
    }

    /// Collects the states reached after completing the first `depth` vertices.
    fn frontier(&self, depth: usize) -> Vec<State> {
        let mut out = Vec::new();
        let mut st = self.initial_state();
        let mut local = 0;
        self.frontier_from(&mut st, 0, depth, &mut local, &mut out);
        out
    }

    fn frontier_from(&self, st: &mut State, v: usize, depth: usize, local: &mut u64, out: &mut Vec<State>) {
        if v == depth || v == self.n {
            out.push(st.clone());
            return;
        }
        if st.deg[v] == self.target {
            if v > 0 && (!self.orderly(st, Self::complete_through(v)) || !self.feasible(st, v)) {
                return;
            }
            self.frontier_from(st, v + 1, depth, local, out);
            return;
        }
        let need = (self.target - st.deg[v]) as u32;
        let mut cand = self.partners(st, v) & above(v);
        let mut chosen = Vec::new();
        self.frontier_pick(st, v, &mut cand, need, &mut chosen, depth, local, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn frontier_pick(
        &self,
        st: &mut State,
        v: usize,
        cand: &mut u64,
        need: u32,
        chosen: &mut Vec<usize>,
        depth: usize,
        local: &mut u64,
        out: &mut Vec<State>,
    ) {
        if st.deg[v] == self.target {
            if !self.orderly(st, Self::complete_through(v)) || !self.feasible(st, v) {
                return;
            }
            self.frontier_from(st, v + 1, depth, local, out);
            return;
        }
        let mut c = *cand;
        while c.count_ones() >= need - chosen.len() as u32 && c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            self.add_edge(st, v, w);
            chosen.push(w);
            let mut next = self.partners(st, v) & above(w);
            self.frontier_pick(st, v, &mut next, need, chosen, depth, local, out);
            chosen.pop();
            self.remove_edge(st, v, w);
        }
    }

    fn to_middle(&self, st: &State) -> MiddleGraph {
        let edges = (0..self.n).flat_map(|u| bits(st.adj[u] & above(u)).map(move |w| (u, w)));
        let g = Graph::from_edges(self.n, edges).expect("search edges are valid");
        MiddleGraph::from_graph(self.k, g).expect("search order is k(k-1)")
    }
}

/// Runs the middle search, handing each orbit representative to `sink`
/// together with its subtree index and position within that subtree.
fn drive(
    cfg: &SearchConfig,
    ctl: &Control,
    progress: Option<Progress<'_>>,
    sink: &(dyn Fn(usize, usize, MiddleGraph) + Sync),
) -> Result<SearchStats, CageError> {
    cfg.validate()?;
    let start = Instant::now();
    let engine = Engine::new(cfg.k, cfg.orbit_pruning, ctl);
    let frontier = engine.frontier(2);
    let total = frontier.len();
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let emitted = AtomicUsize::new(0);
    let local_nodes = AtomicU64::new(0);
    let worker = || {
        let mut local = 0u64;
        loop {
            if ctl.stopped() {
                break;
            }
            let idx = next.fetch_add(1, Ordering::Relaxed);
            if idx >= total {
                break;
            }
            let mut st = frontier[idx].clone();
            let mut seq = 0;
            engine.run_from(&mut st, 2.min(engine.n), &mut local, &mut |s| {
                emitted.fetch_add(1, Ordering::Relaxed);
                sink(idx, seq, engine.to_middle(s));
                seq += 1;
            });
            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(p) = progress {
                p(finished, total);
            }
        }
        local_nodes.fetch_add(local & 0xfff, Ordering::Relaxed);
    };
    if cfg.workers == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..cfg.workers {
                s.spawn(worker);
            }
        });
    }
    Ok(SearchStats {
        nodes: ctl.nodes.load(Ordering::Relaxed) + local_nodes.load(Ordering::Relaxed),
        subtrees: total,
        middles: emitted.load(Ordering::Relaxed),
        wall_time: start.elapsed(),
    })
}

/// Enumerates middle graphs up to label symmetry.
pub fn enumerate_middles(cfg: &SearchConfig) -> Result<MiddleRun, CageError> {
    let ctl = Control::new(cfg.time_budget);
    let found = Mutex::new(Vec::new());
    let stats = drive(cfg, &ctl, None, &|idx, seq, m| found.lock().unwrap().push((idx, seq, m)))?;
    let mut found = found.into_inner().unwrap();
    found.sort_by_key(|(idx, seq, _)| (*idx, *seq));
    Ok(MiddleRun {
        middles: found.into_iter().map(|(_, _, m)| m).collect(),
        complete: !ctl.timed_out.load(Ordering::Relaxed),
        stats,
    })
}

pub fn enumerate_cages(cfg: &SearchConfig) -> Result<SearchResult, CageError> {
    enumerate_cages_with_progress(cfg, None)
}

struct CageAcc {
    graph: Graph,
    aut: AutReport,
    middles: Vec<(usize, usize, MiddleGraph)>,
}

/// Enumerates Moore-bound (k;5,4)-graphs up to isomorphism.
pub fn enumerate_cages_with_progress(cfg: &SearchConfig, progress: Option<Progress<'_>>) -> Result<SearchResult, CageError> {
    let params = CageParams::new(cfg.k, 5, 4)?;
    let order = moore_bound(cfg.k)?;
    let ctl = Control::new(cfg.time_budget);
    let capped = AtomicBool::new(false);
    let cages: Mutex<BTreeMap<CanonicalForm, CageAcc>> = Mutex::new(BTreeMap::new());
    let failure: Mutex<Option<CageError>> = Mutex::new(None);
    let stats = drive(cfg, &ctl, progress, &|idx, seq, m| {
        let g = match extend_middle(&m) {
            Ok(g) => g,
            Err(e) => {
                failure.lock().unwrap().get_or_insert(e);
                ctl.stop.store(true, Ordering::Relaxed);
                return;
            }
        };
        let report = verify_gd_graph(&g, params);
        if !report.passed() || g.order() != order {
            failure.lock().unwrap().get_or_insert(CageError::MiddleCheckFailed(report.summary()));
            ctl.stop.store(true, Ordering::Relaxed);
            return;
        }
        let canon = canonize(&g);
        let mut map = cages.lock().unwrap();
        let known = map.len();
        let entry = map.entry(canon.form.clone()).or_insert_with(|| CageAcc {
            graph: canon.form.to_graph(),
            aut: canon.aut,
            middles: Vec::new(),
        });
        entry.middles.push((idx, seq, m));
        if map.len() > known && cfg.max_solutions.is_some_and(|cap| map.len() >= cap) {
            capped.store(true, Ordering::Relaxed);
            ctl.stop.store(true, Ordering::Relaxed);
        }
    })?;
    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let complete = !ctl.stop.load(Ordering::Relaxed) || (!ctl.timed_out.load(Ordering::Relaxed) && !capped.load(Ordering::Relaxed));
    let mut out_cages = Vec::new();
    let mut out_middles = Vec::new();
    for (form, mut acc) in cages.into_inner().unwrap() {
        acc.middles.sort_by_key(|(i, s, _)| (*i, *s));
        out_cages.push(CageEntry { form, graph: acc.graph, aut: acc.aut });
        out_middles.push(acc.middles.into_iter().map(|(_, _, m)| m).collect());
    }
    Ok(SearchResult {
        cages: out_cages,
        middles: out_middles,
        complete,
        stats,
    })
}
