use gdcage_core::cage::{verify_gd_graph, CageParams};
use gdcage_core::canon::{aut_order, canonical_form, CanonicalForm};
use gdcage_core::geometry::*;
use gdcage_core::graph::{decode_graph6, Graph, Metric};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn flags(pi: &ProjectivePlane, t: PlaneType) -> Vec<(usize, usize)> {
    let n = pi.size();
    (0..n).flat_map(|p| (0..n).map(move |l| (p, l))).filter(|&(p, l)| pi.incident(p, l) == (t == PlaneType::One)).collect()
}

fn default_biaffine(q: usize, t: PlaneType) -> BiaffineLevi {
    let pi = pg2(q).unwrap();
    let (p, l) = default_flag(&pi, t);
    biaffine(&pi, p, l, t).unwrap()
}

#[test]
fn levi_graphs_of_planes() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let g = levi(&pg2(q).unwrap());
        assert_eq!(g.order(), 2 * (q * q + q + 1));
        let r = verify_gd_graph(&g, CageParams::new(q + 1, 6, 3).unwrap());
        assert!(r.passed(), "q={q}: {}", r.summary());
    }
}

#[test]
fn biaffine_shapes_over_random_flags() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let pi = pg2(q).unwrap();
        for t in [PlaneType::One, PlaneType::Two] {
            let all = flags(&pi, t);
            let mut forms = BTreeSet::new();
            for &(p, l) in all.choose_multiple(&mut rng, 5) {
                let b = biaffine(&pi, p, l, t).unwrap();
                let (order, classes, size) = match t {
                    PlaneType::One => (2 * q * q, q, q),
                    PlaneType::Two => (2 * (q * q - 1), q + 1, q - 1),
                };
                assert_eq!(b.graph.order(), order);
                assert!(b.graph.is_regular(q));
                for kind in [ClassKind::Point, ClassKind::Line] {
                    assert_eq!(b.classes(kind).len(), classes);
                    assert!(b.classes(kind).iter().all(|c| c.len() == size));
                }
                if q <= 5 {
                    forms.insert(canonical_form(&b.graph));
                }
            }
            if q <= 5 {
                assert_eq!(forms.len(), 1, "q={q} {t:?}");
            }
        }
    }
}

#[test]
fn biaffine_graphs_have_girth_six_and_diameter_four() {
    for q in [3, 4, 5, 7] {
        for t in [PlaneType::One, PlaneType::Two] {
            let r = verify_gd_graph(&default_biaffine(q, t).graph, CageParams::new(q, 6, 4).unwrap());
            assert!(r.passed(), "q={q} {t:?}: {}", r.summary());
        }
    }
}

#[test]
fn order_two_planes_degenerate_to_cycles() {
    let c8 = canonical_form(&Graph::cycle(8).unwrap());
    let c6 = canonical_form(&Graph::cycle(6).unwrap());
    assert_eq!(canonical_form(&default_biaffine(2, PlaneType::One).graph), c8);
    assert_eq!(canonical_form(&default_biaffine(2, PlaneType::Two).graph), c6);
}

#[test]
fn distance4_classes_small_planes() {
    for q in [2, 3, 4, 5] {
        let pi = pg2(q).unwrap();
        for t in [PlaneType::One, PlaneType::Two] {
            for (p, l) in flags(&pi, t).into_iter().step_by(7).take(4) {
                let r = distance4_classes(&biaffine(&pi, p, l, t).unwrap());
                assert!(r.passed(), "q={q} {t:?} ({p},{l}): {}", r.summary());
            }
        }
    }
}

fn first_choice_spec(b: &BiaffineLevi, a: usize) -> AmalgamSpec {
    let mut classes = Vec::new();
    for kind in [ClassKind::Point, ClassKind::Line] {
        for (index, c) in b.classes(kind).iter().enumerate() {
            classes.push(ClassEdges { kind, index, edges: regular_graphs(c.len(), a).unwrap().remove(0) });
        }
    }
    AmalgamSpec::from_classes(b, &classes).unwrap()
}

#[test]
fn amalgamate_matchings_on_q4() {
    let b = default_biaffine(4, PlaneType::One);
    let g = amalgamate(&b, &first_choice_spec(&b, 1)).unwrap();
    assert_eq!(g.order(), 32);
    assert!(g.is_regular(5));
    assert_eq!(amalgamate(&b, &AmalgamSpec::default()).unwrap(), b.graph);
}

#[test]
fn amalgamate_rejects_bad_specs() {
    let b = default_biaffine(4, PlaneType::One);
    let (u, v) = (b.point_classes[0][0], b.point_classes[1][0]);
    assert_eq!(amalgamate(&b, &AmalgamSpec { edges: vec![(u, v)] }), Err(GeometryError::CrossClass { u, v }));
    let (x, y) = (b.line_classes[0][0], b.line_classes[0][1]);
    assert!(matches!(amalgamate(&b, &AmalgamSpec { edges: vec![(x, y)] }), Err(GeometryError::NonUniformDegree { .. })));
    let bad = ClassEdges { kind: ClassKind::Line, index: 9, edges: vec![] };
    assert!(AmalgamSpec::from_classes(&b, &[bad]).is_err());
    let bad = ClassEdges { kind: ClassKind::Point, index: 0, edges: vec![(0, 4)] };
    assert!(AmalgamSpec::from_classes(&b, &[bad]).is_err());
}

/// Y -> Y+1 inside each point class, intercept -> intercept+2 inside each
/// slope class, over GF(7).
#[test]
fn seven_cycles_on_q7() {
    let pi = pg2(7).unwrap();
    let f = pi.field();
    let pole = pi.index_of([0, 1, 0]).unwrap();
    let axis = pi.index_of([0, 0, 1]).unwrap();
    let b = biaffine(&pi, pole, axis, PlaneType::One).unwrap();
    let vertex = |s: Side| b.side.iter().position(|&t| t == s).unwrap();
    let mut edges = Vec::new();
    for (v, s) in b.side.iter().enumerate() {
        let w = match *s {
            Side::Point(x) => {
                let [a, y, z] = pi.point(x);
                let zi = f.inv(z).unwrap();
                vertex(Side::Point(pi.locate([f.mul(a, zi), f.add(f.mul(y, zi), 1), 1]).unwrap()))
            }
            Side::Line(m) => {
                // a x + y' y + c = 0 with y' != 0: slope -a/y', intercept -c/y'
                let [a, y, c] = pi.line(m);
                let yi = f.inv(y).unwrap();
                let (slope, icpt) = (f.neg(f.mul(a, yi)), f.neg(f.mul(c, yi)));
                vertex(Side::Line(pi.locate([slope, f.neg(1), f.add(icpt, 2)]).unwrap()))
            }
        };
        edges.push((v, w));
    }
    let g = amalgamate(&b, &AmalgamSpec { edges }).unwrap();
    assert_eq!(g.order(), 98);
    assert!(g.is_regular(9));
    assert_eq!(g.girth(), Metric::Finite(5));
    // a class-internal C7 has diameter 3, and so does the whole graph
    assert_eq!(g.diameter(), Metric::Finite(3));
}

fn degree_five_cages() -> BTreeSet<CanonicalForm> {
    include_str!("../../../fixtures/cages-5.g6").lines().map(|l| canonical_form(&decode_graph6(l.as_bytes()).unwrap())).collect()
}

#[test]
fn matching_amalgams_on_q4_reach_the_moore_bound() {
    let b = default_biaffine(4, PlaneType::One);
    let res = search_amalgam(&b, 1, CageParams::new(5, 5, 4).unwrap(), None).unwrap();
    assert!(res.complete);
    assert_eq!(res.space, 6561);
    assert!(!res.graphs.is_empty());
    let known = degree_five_cages();
    let mut orders = BTreeSet::new();
    for (form, g) in &res.graphs {
        assert_eq!(g.order(), 32);
        assert!(known.contains(form));
        orders.insert(aut_order(g).order_u64().unwrap());
    }
    assert!(orders.contains(&48) && orders.contains(&1920));
}

#[test]
fn matching_amalgams_on_q2_find_nothing() {
    let b = default_biaffine(2, PlaneType::One);
    let res = search_amalgam(&b, 1, CageParams::new(3, 5, 4).unwrap(), None).unwrap();
    assert!(res.complete);
    assert_eq!(res.space, 1);
    assert!(res.graphs.is_empty());
}

#[test]
fn two_regular_amalgams_respect_order_and_girth() {
    for q in [3, 4] {
        let b = default_biaffine(q, PlaneType::One);
        let res = search_amalgam(&b, 2, CageParams::new(q + 2, 5, 4).unwrap(), None).unwrap();
        assert!(res.complete);
        for (_, g) in &res.graphs {
            assert_eq!(g.order(), 2 * q * q);
            assert_eq!(g.girth(), Metric::Finite(5));
        }
    }
}

#[test]
fn infeasible_increment() {
    let b = default_biaffine(3, PlaneType::One);
    assert!(matches!(
        search_amalgam(&b, 1, CageParams::new(4, 5, 4).unwrap(), None),
        Err(GeometryError::InfeasibleIncrement { a: 1, size: 3 })
    ));
}

#[test]
fn zero_budget_stops_amalgam_search() {
    let b = default_biaffine(4, PlaneType::One);
    let res = search_amalgam(&b, 1, CageParams::new(5, 5, 4).unwrap(), Some(std::time::Duration::ZERO)).unwrap();
    assert!(!res.complete);
}
