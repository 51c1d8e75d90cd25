//! The standard fixture graphs shipped under `fixtures/`.

use crate::graph::{parse_graph, Graph};

pub const G1: &str = include_str!("../fixtures/G1.graph");
pub const G2: &str = include_str!("../fixtures/G2.graph");
pub const G2_COHN: &str = include_str!("../fixtures/G2_cohn.graph");
pub const G3: &str = include_str!("../fixtures/G3.graph");
pub const G4: &str = include_str!("../fixtures/G4.graph");
pub const G5P: &str = include_str!("../fixtures/G5p.graph");
pub const G5PP: &str = include_str!("../fixtures/G5pp.graph");
pub const G6: &str = include_str!("../fixtures/G6.graph");

fn load(text: &str) -> Graph {
    parse_graph(text).expect("fixture graphs are valid")
}

pub fn g1() -> Graph {
    load(G1)
}

pub fn g2() -> Graph {
    load(G2)
}

pub fn g2_cohn() -> Graph {
    load(G2_COHN)
}

pub fn g3() -> Graph {
    load(G3)
}

pub fn g4() -> Graph {
    load(G4)
}

pub fn g5p() -> Graph {
    load(G5P)
}

pub fn g5pp() -> Graph {
    load(G5PP)
}

pub fn g6() -> Graph {
    load(G6)
}

/// Every fixture with its short name.
pub fn named() -> Vec<(&'static str, Graph)> {
    vec![
        ("G1", g1()),
        ("G2", g2()),
        ("G2_cohn", g2_cohn()),
        ("G3", g3()),
        ("G4", g4()),
        ("G5p", g5p()),
        ("G5pp", g5pp()),
        ("G6", g6()),
    ]
}

pub fn all() -> Vec<Graph> {
    named().into_iter().map(|(_, g)| g).collect()
}

pub fn by_name(name: &str) -> Option<Graph> {
    named()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, g)| g)
}
