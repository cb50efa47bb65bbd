//! Known graphs bundled with the binary.

use gdcage_core::graph::{decode_graph6, Graph};

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub graph6: &'static str,
    pub k: usize,
    pub g: usize,
    pub d: usize,
    pub order: usize,
    pub aut_order: u64,
    pub source: &'static str,
}

impl Fixture {
    pub fn graph(&self) -> Graph {
        decode_graph6(self.graph6.trim().as_bytes()).expect("bundled fixtures decode")
    }
}

macro_rules! cage_list {
    ($file:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/", $file))
    };
}

pub const CAGE_6_44: &str = cage_list!("cage-6-44.g6");
pub const CAGE_6_44_EDGES: &str = cage_list!("cage-6-44.edges");
pub const CAGES_3: &str = cage_list!("cages-3.g6");
pub const CAGES_4: &str = cage_list!("cages-4.g6");
pub const CAGES_5: &str = cage_list!("cages-5.g6");

/// Canonical forms of the Moore-bound cages for `k` in 3..=5, one per line.
pub fn cage_list(k: usize) -> Option<Vec<&'static str>> {
    let text = match k {
        3 => CAGES_3,
        4 => CAGES_4,
        5 => CAGES_5,
        _ => return None,
    };
    Some(text.lines().map(str::trim).filter(|l| !l.is_empty()).collect())
}

pub fn all() -> Vec<Fixture> {
    vec![Fixture {
        name: "cage-6-44",
        graph6: CAGE_6_44,
        k: 6,
        g: 5,
        d: 4,
        order: 44,
        aut_order: 240,
        source: "132-edge list, shifted to 0-based vertices",
    }]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
