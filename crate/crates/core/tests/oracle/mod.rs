//! Brute-force reference implementations used by the integration and
//! acceptance tests. Everything here works on dense vectors indexed by the
//! full ground set and shares no evaluation code with the library.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeSet;

use lextype_core::harness::{fuzz_instance, FuzzBounds};
use lextype_core::{OppState, Rational, TypeStructure};

pub type Pairs = BTreeSet<(usize, usize)>;

/// Every (s_{-i}, t_{-i}) with opponents in ascending order, built by
/// counting in a mixed radix.
pub fn ground(structure: &TypeStructure, player: usize) -> Vec<OppState> {
    let game = structure.game();
    let opponents: Vec<usize> = (0..game.num_players()).filter(|&j| j != player).collect();
    let mut radix = Vec::new();
    for &j in &opponents {
        radix.push(game.num_strategies(j));
    }
    for &j in &opponents {
        radix.push(structure.num_types(j));
    }
    let total: usize = radix.iter().product();
    let k = opponents.len();
    (0..total)
        .map(|mut code| {
            let mut digits = vec![0; radix.len()];
            for d in (0..radix.len()).rev() {
                digits[d] = code % radix[d];
                code /= radix[d];
            }
            OppState {
                strategies: digits[..k].to_vec(),
                types: digits[k..].to_vec(),
            }
        })
        .collect()
}

/// `masses[l][g]` is the level-l mass of ground element g.
pub fn dense_belief(
    structure: &TypeStructure,
    player: usize,
    t: usize,
    ground: &[OppState],
) -> Vec<Vec<Rational>> {
    structure
        .belief(player, t)
        .levels()
        .iter()
        .map(|m| ground.iter().map(|g| m.mass_of(g)).collect())
        .collect()
}

/// The cautious-belief condition at level `m` (1-based), read literally:
/// probability one on E at every level up to m, and every elementary cylinder
/// that meets E gets positive mass inside E at some level up to m.
pub fn believes_at(
    masses: &[Vec<Rational>],
    ground: &[OppState],
    event: &[bool],
    m: usize,
) -> bool {
    for level in &masses[..m] {
        let mut inside = Rational::zero();
        for (g, p) in level.iter().enumerate() {
            if event[g] {
                inside = inside + p.clone();
            }
        }
        if inside != Rational::one() {
            return false;
        }
    }
    let profiles: BTreeSet<&Vec<usize>> = ground.iter().map(|g| &g.strategies).collect();
    for profile in profiles {
        let meets = ground
            .iter()
            .enumerate()
            .any(|(g, x)| event[g] && &x.strategies == profile);
        if !meets {
            continue;
        }
        let mut hit = false;
        for level in &masses[..m] {
            let mut mass = Rational::zero();
            for (g, x) in ground.iter().enumerate() {
                if event[g] && &x.strategies == profile {
                    mass = mass + level[g].clone();
                }
            }
            if mass.is_positive() {
                hit = true;
            }
        }
        if !hit {
            return false;
        }
    }
    true
}

/// Least believing level, scanning every level.
pub fn least_level(masses: &[Vec<Rational>], ground: &[OppState], event: &[bool]) -> Option<usize> {
    if !event.iter().any(|&b| b) {
        return None;
    }
    (1..=masses.len()).find(|&m| believes_at(masses, ground, event, m))
}

fn lex_greater(x: &[Rational], y: &[Rational]) -> bool {
    for (a, b) in x.iter().zip(y) {
        match a.cmp(b) {
            Ordering::Greater => return true,
            Ordering::Less => return false,
            Ordering::Equal => {}
        }
    }
    false
}

/// Strategies that no alternative beats lexicographically.
pub fn best_replies(structure: &TypeStructure, player: usize, t: usize) -> BTreeSet<usize> {
    let game = structure.game();
    let ground = ground(structure, player);
    let masses = dense_belief(structure, player, t, &ground);
    let n = game.num_strategies(player);
    let vectors: Vec<Vec<Rational>> = (0..n)
        .map(|s| {
            masses
                .iter()
                .map(|level| {
                    let mut total = Rational::zero();
                    for (g, x) in ground.iter().enumerate() {
                        let mut profile = x.strategies.clone();
                        profile.insert(player, s);
                        total = total + &level[g] * game.payoff_at(player, &profile);
                    }
                    total
                })
                .collect()
        })
        .collect();
    (0..n)
        .filter(|&s| (0..n).all(|r| !lex_greater(&vectors[r], &vectors[s])))
        .collect()
}

/// Every opponent strategy profile gets positive marginal mass somewhere.
pub fn is_cautious(structure: &TypeStructure, player: usize, t: usize) -> bool {
    let ground = ground(structure, player);
    let masses = dense_belief(structure, player, t, &ground);
    let profiles: BTreeSet<&Vec<usize>> = ground.iter().map(|g| &g.strategies).collect();
    let covered = profiles.into_iter().all(|profile| {
        masses.iter().any(|level| {
            ground
                .iter()
                .enumerate()
                .any(|(g, x)| &x.strategies == profile && level[g].is_positive())
        })
    });
    covered
}

pub fn cautiously_rational(structure: &TypeStructure, player: usize) -> Pairs {
    let mut out = Pairs::new();
    for t in 0..structure.num_types(player) {
        if is_cautious(structure, player, t) {
            for s in best_replies(structure, player, t) {
                out.insert((s, t));
            }
        }
    }
    out
}

/// Indicator of Π_{j≠i} E_j on the ground set of `player`.
pub fn product_indicator(ground: &[OppState], player: usize, events: &[Pairs]) -> Vec<bool> {
    ground
        .iter()
        .map(|x| {
            let mut k = 0;
            (0..events.len()).filter(|&j| j != player).all(|j| {
                let inside = events[j].contains(&(x.strategies[k], x.types[k]));
                k += 1;
                inside
            })
        })
        .collect()
}

/// B_i^c of an indicator event; nobody believes the empty event.
pub fn belief_operator(structure: &TypeStructure, player: usize, event: &[bool]) -> Pairs {
    let ground = ground(structure, player);
    let mut out = Pairs::new();
    for t in 0..structure.num_types(player) {
        let masses = dense_belief(structure, player, t, &ground);
        if least_level(&masses, &ground, event).is_some() {
            for s in 0..structure.game().num_strategies(player) {
                out.insert((s, t));
            }
        }
    }
    out
}

/// R^0 … R^last via the unrolled form R^{m+1} = R^1 ∩ ⋂_{l ≤ m} B^c(Π R^l).
pub fn rcbr_levels(structure: &TypeStructure, last: usize) -> Vec<Vec<Pairs>> {
    let n = structure.num_players();
    let full: Vec<Pairs> = (0..n)
        .map(|i| {
            let mut all = Pairs::new();
            for s in 0..structure.game().num_strategies(i) {
                for t in 0..structure.num_types(i) {
                    all.insert((s, t));
                }
            }
            all
        })
        .collect();
    let r1: Vec<Pairs> = (0..n).map(|i| cautiously_rational(structure, i)).collect();
    let mut levels = vec![full, r1.clone()];
    while levels.len() <= last {
        let next: Vec<Pairs> = (0..n)
            .map(|i| {
                let ground = ground(structure, i);
                let mut acc = r1[i].clone();
                for lower in &levels[1..] {
                    let believed =
                        belief_operator(structure, i, &product_indicator(&ground, i, lower));
                    acc = acc.intersection(&believed).copied().collect();
                }
                acc
            })
            .collect();
        levels.push(next);
    }
    levels
}

/// The fuzz corpus: each seed's generated structure and its rewrite.
pub fn corpus(seeds: u64) -> Vec<(u64, TypeStructure, TypeStructure)> {
    let bounds = FuzzBounds::default();
    (0..seeds)
        .map(|seed| {
            let inst = fuzz_instance(seed, &bounds).expect("default bounds are feasible");
            (seed, inst.original, inst.variant.structure)
        })
        .collect()
}

/// Every subset of `0..n` as an indicator vector.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u64..1 << n).map(move |mask| (0..n).map(|g| mask >> g & 1 == 1).collect())
}
