//! Solver and verifier for finite lexicographic type structures.
//!
//! The crate computes cautious rationality and its iterated cautious-belief
//! refinements on a type structure, decides whether two structures induce
//! the same belief hierarchies, and checks that hierarchy-equivalent
//! structures predict the same strategies.

pub mod epistemic;
pub mod error;
pub mod event;
pub mod fixtures;
pub mod game;
pub mod harness;
pub mod hierarchy;
pub mod io;
pub mod lex;
pub mod measure;
pub mod rational;
pub mod structure;

pub use epistemic::{
    cautious_belief_operator, cautiously_believed_at_level, cautiously_believes,
    cautiously_rational, iterate_assumption, rcbr_iterate, strategy_projection, RcbrTrace,
};
pub use error::{Error, Result};
pub use event::{product_event, Event, JointEvent};
pub use game::{Game, Player, Strategy};
pub use hierarchy::{
    explicit_hierarchy, find_morphism, hierarchy_equivalent, refine, stable_partition, Equivalence,
    HierarchyPartition, HierarchyTerm, Morphism, Origin, TaggedType,
};
pub use io::{parse_instance, serialize_instance, Instance};
pub use lex::{
    best_replies, is_cautious, lex_compare, lex_expected_payoffs, optimal_under, PayoffVector,
};
pub use measure::{Lps, Measure};
pub use rational::Rational;
pub use structure::{marginal_lps, Belief, OppState, TypeId, TypeStructure};
