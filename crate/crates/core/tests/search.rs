use gdcage_core::cage::{antipodal_pairs, find_antipodal_pair, moore_bound, verify_gd_graph, CageParams};
use gdcage_core::canon::{canonical_form, CanonicalForm};
use gdcage_core::graph::{decode_graph6, Graph, Metric};
use gdcage_core::middle::{check_middle, extend_middle, extract_middle, label_symmetries, MiddleGraph};
use gdcage_core::search::{enumerate_cages, enumerate_middles, SearchConfig, SearchResult};
use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

fn run(k: usize, workers: usize) -> SearchResult {
    let mut cfg = SearchConfig::new(k);
    cfg.workers = workers;
    enumerate_cages(&cfg).unwrap()
}

fn unpruned(k: usize) -> SearchResult {
    let mut cfg = SearchConfig::new(k);
    cfg.workers = 4;
    cfg.orbit_pruning = false;
    enumerate_cages(&cfg).unwrap()
}

fn auts(r: &SearchResult) -> Vec<u64> {
    let mut a: Vec<u64> = r.cages.iter().map(|c| c.aut.order_u64().unwrap()).collect();
    a.sort();
    a
}

fn bundled(k: usize) -> Vec<CanonicalForm> {
    let text = match k {
        3 => include_str!("../../../fixtures/cages-3.g6"),
        4 => include_str!("../../../fixtures/cages-4.g6"),
        _ => include_str!("../../../fixtures/cages-5.g6"),
    };
    text.lines().map(|l| canonical_form(&decode_graph6(l.as_bytes()).unwrap())).collect()
}

fn check_cages(r: &SearchResult, k: usize) {
    assert!(r.complete);
    let params = CageParams::new(k, 5, 4).unwrap();
    let forms: BTreeSet<_> = r.cages.iter().map(|c| c.form.clone()).collect();
    assert_eq!(forms.len(), r.cages.len());
    for c in &r.cages {
        assert_eq!(c.graph.order(), moore_bound(k).unwrap());
        assert!(verify_gd_graph(&c.graph, params).passed());
        assert_eq!(canonical_form(&c.graph), c.form);
    }
}

#[test]
fn degree_three() {
    let r = run(3, 1);
    check_cages(&r, 3);
    assert_eq!(auts(&r), vec![4, 12]);
}

#[test]
fn degree_four() {
    let r = run(4, 1);
    check_cages(&r, 4);
    assert_eq!(auts(&r), vec![1, 2, 4, 8]);
}

#[test]
fn degree_five() {
    let r = run(5, 4);
    check_cages(&r, 5);
    assert_eq!(auts(&r), vec![4, 4, 10, 10, 48, 64, 1920]);
}

#[test]
fn bundled_lists_match_search() {
    for k in 3..=5 {
        let found: Vec<_> = run(k, 2).cages.into_iter().map(|c| c.form).collect();
        let mut listed = bundled(k);
        listed.sort();
        assert_eq!(found, listed, "k={k}");
    }
}

#[test]
fn single_worker_order_is_deterministic() {
    let a = enumerate_middles(&SearchConfig::new(5)).unwrap();
    let b = enumerate_middles(&SearchConfig::new(5)).unwrap();
    assert_eq!(a.middles, b.middles);
    let mut cfg = SearchConfig::new(5);
    cfg.workers = 6;
    let c = enumerate_middles(&cfg).unwrap();
    assert_eq!(a.middles, c.middles);
}

#[test]
fn parallel_runs_agree() {
    let one: Vec<_> = run(5, 1).cages.into_iter().map(|c| c.form).collect();
    for w in [2, 3, 8] {
        let many: Vec<_> = run(5, w).cages.into_iter().map(|c| c.form).collect();
        assert_eq!(one, many, "workers={w}");
    }
}

#[test]
fn pruned_representatives_are_inequivalent() {
    for k in 3..=5 {
        let run = enumerate_middles(&SearchConfig::new(k)).unwrap();
        for (i, x) in run.middles.iter().enumerate() {
            assert!(check_middle(x).passed());
            for y in &run.middles[i + 1..] {
                assert!(!x.equivalent_under_label_symmetry(y), "k={k}");
            }
        }
    }
}

/// A labelled middle is an Aut(G)-orbit of (ordered antipodal pair, ordering
/// of N(r)); the action is free, so there are 2 A(G) k! / |Aut G| of them.
#[test]
fn unpruned_counts_match_orbit_formula() {
    for k in 3..=5 {
        let r = unpruned(k);
        check_cages(&r, k);
        let fact: u64 = (1..=k as u64).product();
        for (c, ms) in r.cages.iter().zip(&r.middles) {
            let a = antipodal_pairs(&c.graph).len() as u64;
            assert_eq!(ms.len() as u64, 2 * a * fact / c.aut.order_u64().unwrap(), "k={k}");
        }
    }
}

#[test]
fn orbits_of_representatives_cover_all_labellings() {
    for k in 3..=5 {
        let reps = enumerate_middles(&SearchConfig::new(k)).unwrap().middles;
        let mut cfg = SearchConfig::new(k);
        cfg.orbit_pruning = false;
        let all: BTreeSet<Vec<(usize, usize)>> =
            enumerate_middles(&cfg).unwrap().middles.iter().map(|m| m.graph().edges().collect::<Vec<_>>()).collect();
        let mut covered = BTreeSet::new();
        for h in &reps {
            for (sigma, t) in label_symmetries(k) {
                covered.insert(h.transform(&sigma, t).graph().edges().collect::<Vec<_>>());
            }
        }
        assert_eq!(covered, all, "k={k}");
    }
}

#[test]
fn every_extracted_middle_is_emitted() {
    for k in 3..=5 {
        let r = unpruned(k);
        let emitted: BTreeSet<_> = r.middles.iter().flatten().map(|m| m.graph().edges().collect::<Vec<_>>()).collect();
        for c in &r.cages {
            for (a, b) in antipodal_pairs(&c.graph) {
                for (x, y) in [(a, b), (b, a)] {
                    let h = extract_middle(&c.graph, x, y).unwrap();
                    assert!(emitted.contains(&h.graph().edges().collect::<Vec<_>>()));
                }
            }
        }
    }
}

#[test]
fn middle_shapes() {
    let cycle12 = Graph::cycle(12).unwrap();
    for c in run(3, 1).cages {
        let (r, s) = find_antipodal_pair(&c.graph).unwrap();
        let h = extract_middle(&c.graph, r, s).unwrap();
        assert!(h.graph().is_regular(1));
        assert_eq!(h.graph().edge_count(), 3);
    }
    for c in run(4, 1).cages {
        for (r, s) in antipodal_pairs(&c.graph) {
            let h = extract_middle(&c.graph, r, s).unwrap();
            assert_eq!(canonical_form(h.graph()), canonical_form(&cycle12));
            assert_eq!(h.graph().girth(), Metric::Finite(12));
            assert_eq!(h.graph().diameter(), Metric::Finite(6));
        }
    }
}

#[test]
fn h_statistics_for_degree_five() {
    let mut least = BTreeMap::new();
    let mut every = BTreeMap::new();
    for c in run(5, 4).cages {
        let (r, s) = find_antipodal_pair(&c.graph).unwrap();
        let h = extract_middle(&c.graph, r, s).unwrap();
        *least.entry((h.graph().girth(), h.graph().diameter())).or_insert(0) += 1;
        let mut kinds = BTreeSet::new();
        for (a, b) in antipodal_pairs(&c.graph) {
            for (x, y) in [(a, b), (b, a)] {
                let h = extract_middle(&c.graph, x, y).unwrap();
                kinds.insert((h.graph().girth(), h.graph().diameter()));
            }
        }
        *every.entry((c.aut.order_u64().unwrap(), kinds)).or_insert(0) += 1;
    }
    let f = Metric::Finite;
    assert_eq!(least, BTreeMap::from([((f(5), f(4)), 2), ((f(5), f(5)), 3), ((f(6), f(4)), 2)]));
    // only the cage with 48 automorphisms has pairs of both kinds
    let mixed: Vec<_> = every.keys().filter(|(_, kinds)| kinds.len() > 1).map(|(a, _)| *a).collect();
    assert_eq!(mixed, vec![48]);
}

/// In a Moore-bound cage the sets R_i = N(r_i) - r partition the middle, as
/// do the C_j, and |R_i ∩ C_j| <= 1.
#[test]
fn row_column_partitions() {
    for k in 3..=5 {
        for c in run(k, 2).cages {
            let g = &c.graph;
            for (r, s) in antipodal_pairs(g) {
                let near: BTreeSet<usize> = [r, s].into_iter().chain(g.neighbors(r)).chain(g.neighbors(s)).collect();
                let middle: BTreeSet<usize> = (0..g.order()).filter(|v| !near.contains(v)).collect();
                let rows: Vec<BTreeSet<usize>> = g.neighbors(r).map(|x| g.neighbors(x).filter(|&y| y != r).collect()).collect();
                let cols: Vec<BTreeSet<usize>> = g.neighbors(s).map(|x| g.neighbors(x).filter(|&y| y != s).collect()).collect();
                for parts in [&rows, &cols] {
                    let union: BTreeSet<usize> = parts.iter().flatten().copied().collect();
                    assert_eq!(union, middle);
                    assert_eq!(parts.iter().map(BTreeSet::len).sum::<usize>(), middle.len());
                }
                for ri in &rows {
                    for cj in &cols {
                        assert!(ri.intersection(cj).count() <= 1);
                    }
                }
            }
        }
    }
}

#[test]
fn zero_budget_is_incomplete() {
    let mut cfg = SearchConfig::new(5);
    cfg.time_budget = Some(Duration::ZERO);
    let r = enumerate_cages(&cfg).unwrap();
    assert!(!r.complete);
    for c in &r.cages {
        assert!(verify_gd_graph(&c.graph, CageParams::new(5, 5, 4).unwrap()).passed());
    }
    let m = enumerate_middles(&cfg).unwrap();
    assert!(!m.complete);
}

#[test]
fn degree_six_fixture_round_trip() {
    let text = include_str!("../../../fixtures/cage-6-44.g6");
    let g = decode_graph6(text.trim().as_bytes()).unwrap();
    let (r, s) = find_antipodal_pair(&g).unwrap();
    let h: MiddleGraph = extract_middle(&g, r, s).unwrap();
    assert!(check_middle(&h).passed());
    let back = extend_middle(&h).unwrap();
    assert_eq!(canonical_form(&back), canonical_form(&g));
}
