//! Hierarchy-preserving rewrites of a type structure.
//!
//! Two moves are used. Duplication copies a type together with its belief and
//! splits every other player's mass on that type between the original and the
//! copy, level by level and cell by cell. Merging removes a type whose belief
//! agrees with another type's belief once opponents' types are identified with
//! the original types they came from, and redirects mass accordingly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::Player;
use crate::hierarchy::Morphism;
use crate::measure::{Lps, Measure};
use crate::rational::Rational;
use crate::structure::{Belief, OppState, TypeId, TypeStructure};

/// Mass-splitting denominator used by random duplications.
const SPLIT_DENOMINATOR: i64 = 4;

/// A rewritten structure with hierarchy morphisms to and from the input.
#[derive(Debug, Clone)]
pub struct Variant {
    pub structure: TypeStructure,
    /// From the input structure to `structure`.
    pub forward: Morphism,
    /// From `structure` back to the input structure.
    pub backward: Morphism,
}

fn rebuild_beliefs(
    structure: &TypeStructure,
    mut rewrite: impl FnMut(Player, TypeId, usize, &Measure<OppState>) -> Vec<(OppState, Rational)>,
) -> Vec<Vec<Belief>> {
    (0..structure.num_players())
        .map(|i| {
            (0..structure.num_types(i))
                .map(|t| {
                    let levels = structure
                        .belief(i, t)
                        .levels()
                        .iter()
                        .enumerate()
                        .map(|(l, m)| {
                            Measure::new(rewrite(i, t, l, m)).expect("rewrites preserve total mass")
                        })
                        .collect();
                    Lps::new(levels).expect("length preserved")
                })
                .collect()
        })
        .collect()
}

fn fresh_name(structure: &TypeStructure, player: Player, base: &str) -> String {
    let taken = structure.type_names(player);
    (1..)
        .map(|k| format!("{base}~{k}"))
        .find(|n| !taken.contains(n))
        .unwrap()
}

/// Appends a copy of type `t` of `player` with the same belief. For each
/// belief of another player, mass on a cell whose `player` slot holds `t` is
/// split: `keep(owner, owner_type, level, cell)` stays on `t` and the rest
/// moves to the copy. `keep` must return a value in `[0, 1]`.
pub fn duplicate_type(
    structure: &TypeStructure,
    player: Player,
    t: TypeId,
    mut keep: impl FnMut(Player, TypeId, usize, &OppState) -> Rational,
) -> TypeStructure {
    let copy = structure.num_types(player);
    let mut beliefs = rebuild_beliefs(structure, |owner, owner_type, l, m| {
        if owner == player {
            return m.iter().map(|(s, p)| (s.clone(), p.clone())).collect();
        }
        let slot = if player < owner { player } else { player - 1 };
        let mut out = Vec::new();
        for (state, p) in m.iter() {
            if state.types[slot] != t {
                out.push((state.clone(), p.clone()));
                continue;
            }
            let f = keep(owner, owner_type, l, state);
            assert!(
                !f.is_negative() && f <= Rational::one(),
                "split fraction {f} outside [0, 1]"
            );
            let mut moved = state.clone();
            moved.types[slot] = copy;
            out.push((state.clone(), p * &f));
            out.push((moved, p * &(Rational::one() - f)));
        }
        out
    });
    beliefs[player].push(structure.belief(player, t).clone());
    let mut types: Vec<Vec<String>> = (0..structure.num_players())
        .map(|i| structure.type_names(i).to_vec())
        .collect();
    types[player].push(fresh_name(
        structure,
        player,
        structure.type_name(player, t),
    ));
    structure
        .with_types(types, beliefs)
        .expect("duplication keeps the structure valid")
}

/// Removes type `remove` of `player`, sending all mass on it to `keep`. Types
/// after `remove` shift down by one.
pub fn merge_types(
    structure: &TypeStructure,
    player: Player,
    keep: TypeId,
    remove: TypeId,
) -> TypeStructure {
    assert_ne!(keep, remove);
    let relabel = |u: TypeId| {
        let u = if u == remove { keep } else { u };
        if u > remove {
            u - 1
        } else {
            u
        }
    };
    let mut beliefs = rebuild_beliefs(structure, |owner, _, _, m| {
        if owner == player {
            return m.iter().map(|(s, p)| (s.clone(), p.clone())).collect();
        }
        let slot = if player < owner { player } else { player - 1 };
        m.iter()
            .map(|(state, p)| {
                let mut state = state.clone();
                state.types[slot] = relabel(state.types[slot]);
                (state, p.clone())
            })
            .collect()
    });
    beliefs[player].remove(remove);
    let mut types: Vec<Vec<String>> = (0..structure.num_players())
        .map(|i| structure.type_names(i).to_vec())
        .collect();
    types[player].remove(remove);
    structure
        .with_types(types, beliefs)
        .expect("merging keeps the structure valid")
}

struct Working {
    structure: TypeStructure,
    forward: Morphism,
    backward: Morphism,
}

impl Working {
    fn duplicate<R: Rng>(&mut self, rng: &mut R) {
        let player = rng.gen_range(0..self.structure.num_players());
        let t = rng.gen_range(0..self.structure.num_types(player));
        let structure = duplicate_type(&self.structure, player, t, |_, _, _, _| {
            Rational::new(rng.gen_range(0..=SPLIT_DENOMINATOR), SPLIT_DENOMINATOR)
        });
        let origin = self.backward.maps[player][t];
        self.backward.maps[player].push(origin);
        self.structure = structure;
    }

    // Types whose beliefs coincide after identifying every opponent type with
    // its image in the input structure.
    fn merge_candidates(&self) -> Vec<(Player, TypeId, TypeId)> {
        let s = &self.structure;
        let mut out = Vec::new();
        for i in 0..s.num_players() {
            let opponents = s.game().opponents(i);
            let images: Vec<Lps<OppState>> = (0..s.num_types(i))
                .map(|t| {
                    s.belief(i, t).pushforward(|state| {
                        let types = state
                            .types
                            .iter()
                            .zip(&opponents)
                            .map(|(&u, &j)| self.backward.maps[j][u])
                            .collect();
                        OppState::new(state.strategies.clone(), types)
                    })
                })
                .collect();
            for a in 0..images.len() {
                for b in a + 1..images.len() {
                    if images[a] == images[b] {
                        out.push((i, a, b));
                    }
                }
            }
        }
        out
    }

    fn merge(&mut self, player: Player, keep: TypeId, remove: TypeId) {
        self.structure = merge_types(&self.structure, player, keep, remove);
        for img in self.forward.maps[player].iter_mut() {
            if *img == remove {
                *img = keep;
            }
            if *img > remove {
                *img -= 1;
            }
        }
        self.backward.maps[player].remove(remove);
    }
}

/// Applies `steps` random duplications and merges drawn from `seed`.
pub fn equivalent_variant_steps(structure: &TypeStructure, seed: u64, steps: usize) -> Variant {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Working {
        structure: structure.clone(),
        forward: Morphism::identity(structure),
        backward: Morphism::identity(structure),
    };
    for _ in 0..steps {
        let candidates = w.merge_candidates();
        if !candidates.is_empty() && rng.gen_bool(0.4) {
            let (i, a, b) = candidates[rng.gen_range(0..candidates.len())];
            w.merge(i, a, b);
        } else {
            w.duplicate(&mut rng);
        }
    }
    Variant {
        structure: w.structure,
        forward: w.forward,
        backward: w.backward,
    }
}

/// A random hierarchy-equivalent rewrite of `structure` (one to four moves).
pub fn equivalent_variant(structure: &TypeStructure, seed: u64) -> Variant {
    let steps = ChaCha8Rng::seed_from_u64(seed ^ 0x005e_ed0f_57e9).gen_range(1..=4);
    equivalent_variant_steps(structure, seed, steps)
}
