//! The two-player example with a dominant strategy for Bob, in two
//! hierarchy-equivalent presentations: `T` with one Bob type and `T_circ`
//! where Bob's type is split in two.
//!
//! Player 0 is Ann with the single strategy `s_a` and constant payoff 0.
//! Player 1 is Bob with `s_b_bar` (payoff 1) strictly dominating `s_b_hat`
//! (payoff 0).

use crate::io::{parse_instance, Instance};
use crate::structure::TypeStructure;

pub const EXAMPLE1_JSON: &str = include_str!("../fixtures/example1.json");

pub fn example1_instance() -> Instance {
    parse_instance(EXAMPLE1_JSON).expect("bundled fixture is valid")
}

/// `(T, T_circ)`.
pub fn example1() -> (TypeStructure, TypeStructure) {
    let mut inst = example1_instance();
    let second = inst.structures.pop().unwrap();
    let first = inst.structures.pop().unwrap();
    (first, second)
}
