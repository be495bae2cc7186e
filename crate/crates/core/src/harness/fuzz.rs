//! Randomized checks that behavioral implications survive
//! hierarchy-preserving rewrites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::harness::gen::{gen_structure, GenParams};
use crate::harness::invariance::{transport_check, verify_invariance};
use crate::harness::variant::{equivalent_variant, Variant};
use crate::hierarchy::hierarchy_equivalent;
use crate::structure::TypeStructure;

/// Upper bounds for generated instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzBounds {
    pub max_players: usize,
    pub max_strategies: usize,
    pub max_types: usize,
    pub max_lps_len: usize,
    pub denominator: u32,
}

impl Default for FuzzBounds {
    fn default() -> Self {
        FuzzBounds {
            max_players: 3,
            max_strategies: 3,
            max_types: 3,
            max_lps_len: 3,
            denominator: 12,
        }
    }
}

impl FuzzBounds {
    /// Generator parameters for one seed; the player count is drawn from the
    /// seed as well.
    pub fn params(&self, seed: u64) -> GenParams {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        GenParams {
            seed,
            players: rng.gen_range(2..=self.max_players.max(2)),
            strategies: (1, self.max_strategies),
            types: (1, self.max_types),
            lps_len: (1, self.max_lps_len),
            denominator: self.denominator,
            payoff_bound: 2,
            cautious_percent: 50,
        }
    }
}

/// One generated structure and its rewritten twin.
#[derive(Debug, Clone)]
pub struct FuzzInstance {
    pub seed: u64,
    pub original: TypeStructure,
    pub variant: Variant,
}

pub fn fuzz_instance(seed: u64, bounds: &FuzzBounds) -> Result<FuzzInstance> {
    let original = gen_structure(&bounds.params(seed))?;
    let variant = equivalent_variant(&original, seed);
    Ok(FuzzInstance {
        seed,
        original,
        variant,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub seed: u64,
    pub states: (usize, usize),
    /// The rewrite passed the hierarchy-equivalence decision.
    pub equivalent: bool,
    /// Strategy projections agree at every level.
    pub invariance: bool,
    /// Both witnesses carry every level into its counterpart.
    pub transport: bool,
    /// Some R^m level differs between the two traces (the projections may
    /// still agree); used to report how often the check is non-trivial.
    pub events_differ: bool,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.equivalent && self.invariance && self.transport
    }
}

pub fn check_instance(inst: &FuzzInstance) -> Result<CaseOutcome> {
    let a = &inst.original;
    let b = &inst.variant.structure;
    let equivalent = hierarchy_equivalent(a, b)?.holds();
    let report = verify_invariance(a, b)?;
    let fwd = transport_check(a, b, &inst.variant.forward)?;
    let back = transport_check(b, a, &inst.variant.backward)?;
    let ta = crate::epistemic::rcbr_iterate(a);
    let tb = crate::epistemic::rcbr_iterate(b);
    let events_differ = (0..=ta.stabilized_at().max(tb.stabilized_at()) + 1).any(|m| {
        ta.level(m)
            .iter()
            .zip(tb.level(m))
            .any(|(x, y)| x.pairs != y.pairs)
    });
    Ok(CaseOutcome {
        seed: inst.seed,
        states: (a.state_count(), b.state_count()),
        equivalent,
        invariance: report.verdict,
        transport: fwd.holds && back.holds,
        events_differ,
    })
}

pub fn fuzz_case(seed: u64, bounds: &FuzzBounds) -> Result<CaseOutcome> {
    check_instance(&fuzz_instance(seed, bounds)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub first_seed: u64,
    pub iterations: u64,
    pub failures: Vec<CaseOutcome>,
    pub nontrivial: u64,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs seeds `seed..seed + iters` in parallel; results are reported in seed
/// order.
pub fn run_fuzz(seed: u64, iters: u64, bounds: &FuzzBounds) -> Result<FuzzSummary> {
    let outcomes: Vec<CaseOutcome> = (seed..seed + iters)
        .into_par_iter()
        .map(|s| fuzz_case(s, bounds))
        .collect::<Result<_>>()?;
    Ok(FuzzSummary {
        first_seed: seed,
        iterations: iters,
        nontrivial: outcomes.iter().filter(|o| o.events_differ).count() as u64,
        failures: outcomes.into_iter().filter(|o| !o.passed()).collect(),
    })
}
