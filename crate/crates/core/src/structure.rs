//! Lexicographic type structures over a finite game.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::game::{Game, Player, Strategy};
use crate::measure::{Lps, Measure};

/// Index into one player's type list.
pub type TypeId = usize;

/// An element of S_{-i} × T_{-i}: one strategy and one type per opponent,
/// opponents in ascending player order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OppState {
    pub strategies: Vec<Strategy>,
    pub types: Vec<TypeId>,
}

impl OppState {
    pub fn new(strategies: Vec<Strategy>, types: Vec<TypeId>) -> OppState {
        debug_assert_eq!(strategies.len(), types.len());
        OppState { strategies, types }
    }
}

/// A belief of player i: an LPS over S_{-i} × T_{-i}.
pub type Belief = Lps<OppState>;
/// A first-order belief: an LPS over S_{-i}.
pub type FirstOrder = Lps<Vec<Strategy>>;

/// A validated type structure. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeStructure {
    game: Arc<Game>,
    types: Vec<Vec<String>>,
    beliefs: Vec<Vec<Belief>>,
}

impl TypeStructure {
    /// Validates type names and that every belief references existing
    /// opponent strategies and types.
    pub fn new(
        game: Arc<Game>,
        types: Vec<Vec<String>>,
        beliefs: Vec<Vec<Belief>>,
    ) -> Result<TypeStructure> {
        let n = game.num_players();
        if types.len() != n || beliefs.len() != n {
            return Err(Error::invalid(
                "structure",
                format!("expected type and belief lists for {n} players"),
            ));
        }
        for (i, names) in types.iter().enumerate() {
            if names.is_empty() {
                return Err(Error::invalid(
                    format!("players[{i}].types"),
                    "type set is empty",
                ));
            }
            let mut sorted: Vec<&String> = names.iter().collect();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::invalid(
                    format!("players[{i}].types"),
                    format!("duplicate type `{}`", w[0]),
                ));
            }
            if beliefs[i].len() != names.len() {
                return Err(Error::invalid(
                    format!("players[{i}].types"),
                    "every type needs exactly one belief",
                ));
            }
        }
        for (i, per_type) in beliefs.iter().enumerate() {
            let opponents = game.opponents(i);
            for (t, belief) in per_type.iter().enumerate() {
                for (l, level) in belief.levels().iter().enumerate() {
                    for state in level.support() {
                        let path = format!("players[{i}].types[{t}].belief[{l}]");
                        if state.strategies.len() != opponents.len()
                            || state.types.len() != opponents.len()
                        {
                            return Err(Error::invalid(path, "profile has wrong arity"));
                        }
                        for (k, &j) in opponents.iter().enumerate() {
                            if state.strategies[k] >= game.num_strategies(j) {
                                return Err(Error::DanglingReference {
                                    path,
                                    what: "strategy",
                                    name: format!("#{} of player {}", state.strategies[k], j),
                                });
                            }
                            if state.types[k] >= types[j].len() {
                                return Err(Error::DanglingReference {
                                    path,
                                    what: "type",
                                    name: format!("#{} of player {}", state.types[k], j),
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(TypeStructure {
            game,
            types,
            beliefs,
        })
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn num_players(&self) -> usize {
        self.game.num_players()
    }

    pub fn num_types(&self, player: Player) -> usize {
        self.types[player].len()
    }

    pub fn type_names(&self, player: Player) -> &[String] {
        &self.types[player]
    }

    pub fn type_name(&self, player: Player, t: TypeId) -> &str {
        &self.types[player][t]
    }

    pub fn belief(&self, player: Player, t: TypeId) -> &Belief {
        &self.beliefs[player][t]
    }

    pub fn checked_belief(&self, player: Player, t: TypeId) -> Result<&Belief> {
        self.beliefs
            .get(player)
            .and_then(|b| b.get(t))
            .ok_or(Error::UnknownType { player, type_id: t })
    }

    pub fn beliefs(&self, player: Player) -> &[Belief] {
        &self.beliefs[player]
    }

    /// Σ_i |S_i × T_i|.
    pub fn state_count(&self) -> usize {
        (0..self.num_players())
            .map(|i| self.game.num_strategies(i) * self.num_types(i))
            .sum()
    }

    /// The full ground set S_{-i} × T_{-i}.
    pub fn opponent_states(&self, player: Player) -> Vec<OppState> {
        let counts: Vec<usize> = self.types.iter().map(Vec::len).collect();
        opponent_states(&self.game, &counts, player)
    }

    /// Rebuilds the structure with the same game and new types and beliefs.
    pub fn with_types(
        &self,
        types: Vec<Vec<String>>,
        beliefs: Vec<Vec<Belief>>,
    ) -> Result<TypeStructure> {
        TypeStructure::new(Arc::clone(&self.game), types, beliefs)
    }
}

/// S_{-i} × T_{-i} for the given per-player type counts, lexicographic in
/// (strategies, types).
pub fn opponent_states(game: &Game, type_counts: &[usize], player: Player) -> Vec<OppState> {
    let sizes: Vec<usize> = game
        .opponents(player)
        .into_iter()
        .map(|j| type_counts[j])
        .collect();
    let types = crate::game::all_profiles(&sizes);
    game.opponent_profiles(player)
        .into_iter()
        .flat_map(|s| {
            types
                .iter()
                .map(move |t| OppState::new(s.clone(), t.clone()))
        })
        .collect()
}

/// Strategy marginal of a belief, level by level.
pub fn marginal_lps(belief: &Belief) -> FirstOrder {
    belief.pushforward(|state| state.strategies.clone())
}

/// Convenience for tests and fixtures: a Dirac level on one opponent state.
pub fn dirac_belief(strategies: Vec<Strategy>, types: Vec<TypeId>) -> Belief {
    Lps::single(Measure::dirac(OppState::new(strategies, types)))
}
