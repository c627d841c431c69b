//! Bundled graph corpus.
//!
//! * `ex4_4_m`, `ex4_4_m2`: the maximal ideal of `x^2 + y^3 + z^6` and its
//!   square (elliptic curve of self-intersection -2 or -1).
//! * `ex5_11_1`, `ex5_11_2`: two minimal log resolutions of `I(L)` on a
//!   quintic cone, `Z = E5^*` and `Z = E3^* + E5^*`.
//! * `homog_d3..5`: the minimal resolution of a degree-`d` cone with the
//!   maximal ideal `Z = C` (arrow weight `d`).
//! * `a1_rdp`, `double_edge`: small sanity graphs.

use crate::graph::WeightedDualGraph;
use crate::io;

pub const EX4_4_M: &str = include_str!("../fixtures/ex4_4_m.wdg.json");
pub const EX4_4_M2: &str = include_str!("../fixtures/ex4_4_m2.wdg.json");
pub const EX5_11_1: &str = include_str!("../fixtures/ex5_11_1.wdg.json");
pub const EX5_11_2: &str = include_str!("../fixtures/ex5_11_2.wdg.json");
pub const HOMOG_D3: &str = include_str!("../fixtures/homog_d3.wdg.json");
pub const HOMOG_D4: &str = include_str!("../fixtures/homog_d4.wdg.json");
pub const HOMOG_D5: &str = include_str!("../fixtures/homog_d5.wdg.json");
pub const A1_RDP: &str = include_str!("../fixtures/a1_rdp.wdg.json");
pub const DOUBLE_EDGE: &str = include_str!("../fixtures/double_edge.wdg.json");

pub const ALL: [(&str, &str); 9] = [
    ("ex4_4_m", EX4_4_M),
    ("ex4_4_m2", EX4_4_M2),
    ("ex5_11_1", EX5_11_1),
    ("ex5_11_2", EX5_11_2),
    ("homog_d3", HOMOG_D3),
    ("homog_d4", HOMOG_D4),
    ("homog_d5", HOMOG_D5),
    ("a1_rdp", A1_RDP),
    ("double_edge", DOUBLE_EDGE),
];

/// Looks up a bundled fixture by name.
pub fn text(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn load(text: &str) -> WeightedDualGraph {
    io::parse(text).expect("bundled fixture is valid")
}

pub fn ex4_4_m() -> WeightedDualGraph {
    load(EX4_4_M)
}

pub fn ex4_4_m2() -> WeightedDualGraph {
    load(EX4_4_M2)
}

pub fn ex5_11_1() -> WeightedDualGraph {
    load(EX5_11_1)
}

pub fn ex5_11_2() -> WeightedDualGraph {
    load(EX5_11_2)
}

pub fn homog(d: u32) -> Option<WeightedDualGraph> {
    match d {
        3 => Some(load(HOMOG_D3)),
        4 => Some(load(HOMOG_D4)),
        5 => Some(load(HOMOG_D5)),
        _ => None,
    }
}
