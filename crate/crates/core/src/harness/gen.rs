//! Seeded random games and type structures.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::measure::{Lps, Measure};
use crate::rational::Rational;
use crate::structure::{opponent_states, OppState, TypeStructure};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub seed: u64,
    pub players: usize,
    /// Inclusive bounds on |S_i|.
    pub strategies: (usize, usize),
    /// Inclusive bounds on |T_i|.
    pub types: (usize, usize),
    /// Inclusive bounds on LPS length.
    pub lps_len: (usize, usize),
    /// Every mass is a multiple of `1 / denominator`.
    pub denominator: u32,
    /// Payoffs are integers in `-payoff_bound..=payoff_bound`.
    pub payoff_bound: i64,
    /// Percentage of types whose last level is forced to cover every
    /// opponent strategy profile missed by the earlier levels.
    pub cautious_percent: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            players: 2,
            strategies: (1, 3),
            types: (1, 3),
            lps_len: (1, 3),
            denominator: 12,
            payoff_bound: 2,
            cautious_percent: 50,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        let bounded = |name: &str, (lo, hi): (usize, usize)| {
            if lo == 0 {
                Err(Error::InfeasibleBounds(format!(
                    "{name} lower bound must be at least 1"
                )))
            } else if lo > hi {
                Err(Error::InfeasibleBounds(format!(
                    "{name} bounds {lo}..={hi} are empty"
                )))
            } else {
                Ok(())
            }
        };
        if self.players < 2 {
            return Err(Error::InfeasibleBounds(format!(
                "need at least 2 players, got {}",
                self.players
            )));
        }
        bounded("strategies", self.strategies)?;
        bounded("types", self.types)?;
        bounded("lps length", self.lps_len)?;
        if self.denominator == 0 {
            return Err(Error::InfeasibleBounds(
                "mass denominator must be positive".into(),
            ));
        }
        if self.cautious_percent > 100 {
            return Err(Error::InfeasibleBounds(
                "cautious percentage above 100".into(),
            ));
        }
        if self.payoff_bound < 0 {
            return Err(Error::InfeasibleBounds(
                "payoff bound must be nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// Splits `d` into `k` positive parts.
fn composition<R: Rng>(rng: &mut R, d: usize, k: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = sample(rng, d - 1, k - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(d);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let w = c - prev;
            prev = c;
            w
        })
        .collect()
}

/// Support size: 1 half of the time, otherwise doubling odds toward larger
/// supports, capped at `max`.
fn support_size<R: Rng>(rng: &mut R, max: usize) -> usize {
    let mut k = 1;
    while k < max && rng.gen_bool(0.5) {
        k += 1;
    }
    k
}

/// A random probability measure on `ground` whose masses are multiples of
/// `1/denominator`. Every index in `required` is put in the support.
pub(crate) fn random_measure<R: Rng>(
    rng: &mut R,
    ground: &[OppState],
    required: &[usize],
    denominator: u32,
) -> Measure<OppState> {
    let d = denominator as usize;
    let max = ground.len().min(d);
    let k = support_size(rng, max).max(required.len());
    let mut chosen: Vec<usize> = required.to_vec();
    let rest: Vec<usize> = (0..ground.len())
        .filter(|g| !required.contains(g))
        .collect();
    let extra = k - required.len();
    chosen.extend(sample(rng, rest.len(), extra).into_iter().map(|x| rest[x]));
    chosen.sort_unstable();
    let weights = composition(rng, d, chosen.len());
    Measure::new(
        chosen
            .into_iter()
            .zip(weights)
            .map(|(g, w)| (ground[g].clone(), Rational::new(w as i64, d as i64))),
    )
    .expect("composition sums to one")
}

// One state per opponent strategy profile that `levels` leaves uncovered.
fn covering_states<R: Rng>(
    rng: &mut R,
    ground: &[OppState],
    levels: &[Measure<OppState>],
) -> Vec<usize> {
    let covered: BTreeSet<&Vec<usize>> = levels
        .iter()
        .flat_map(|m| m.support().map(|s| &s.strategies))
        .collect();
    let mut by_profile: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (g, state) in ground.iter().enumerate() {
        if !covered.contains(&state.strategies) {
            by_profile.entry(&state.strategies).or_default().push(g);
        }
    }
    by_profile
        .into_values()
        .map(|options| options[rng.gen_range(0..options.len())])
        .collect()
}

pub fn gen_structure(params: &GenParams) -> Result<TypeStructure> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.players;
    let players: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let strategies: Vec<Vec<String>> = (0..n)
        .map(|i| {
            let k = rng.gen_range(params.strategies.0..=params.strategies.1);
            (0..k).map(|s| format!("s{i}_{s}")).collect()
        })
        .collect();
    let bound = params.payoff_bound;
    let game = Game::from_fn(players, strategies, |_, _| {
        Rational::from_integer(rng.gen_range(-bound..=bound))
    })?;
    let types: Vec<Vec<String>> = (0..n)
        .map(|i| {
            let k = rng.gen_range(params.types.0..=params.types.1);
            (0..k).map(|t| format!("t{i}_{t}")).collect()
        })
        .collect();
    let game = Arc::new(game);
    let type_counts: Vec<usize> = types.iter().map(Vec::len).collect();
    let beliefs = (0..n)
        .map(|i| {
            let ground = opponent_states(&game, &type_counts, i);
            (0..types[i].len())
                .map(|_| {
                    let len = rng.gen_range(params.lps_len.0..=params.lps_len.1);
                    let cautious = rng.gen_range(0..100) < params.cautious_percent;
                    let mut levels = Vec::with_capacity(len);
                    for l in 0..len {
                        let required = if cautious && l + 1 == len {
                            covering_states(&mut rng, &ground, &levels)
                        } else {
                            Vec::new()
                        };
                        if required.len() > params.denominator as usize {
                            return Err(Error::InfeasibleBounds(format!(
                                "covering {} strategy profiles needs a mass denominator of at least {}",
                                required.len(),
                                required.len()
                            )));
                        }
                        levels.push(random_measure(&mut rng, &ground, &required, params.denominator));
                    }
                    Ok(Lps::new(levels).expect("length at least 1"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    TypeStructure::new(game, types, beliefs)
}
