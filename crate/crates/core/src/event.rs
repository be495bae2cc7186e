//! Events on strategy-type pairs and their products.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::game::{Player, Strategy};
use crate::structure::{OppState, TypeId, TypeStructure};

/// A subset of S_i × T_i for one player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Event {
    pub player: Player,
    pub pairs: BTreeSet<(Strategy, TypeId)>,
}

/// A subset of S_{-i} × T_{-i}.
pub type JointEvent = BTreeSet<OppState>;

impl Event {
    pub fn empty(player: Player) -> Event {
        Event {
            player,
            pairs: BTreeSet::new(),
        }
    }

    pub fn full(structure: &TypeStructure, player: Player) -> Event {
        let pairs = (0..structure.game().num_strategies(player))
            .flat_map(|s| (0..structure.num_types(player)).map(move |t| (s, t)))
            .collect();
        Event { player, pairs }
    }

    pub fn from_pairs(
        player: Player,
        pairs: impl IntoIterator<Item = (Strategy, TypeId)>,
    ) -> Event {
        Event {
            player,
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, s: Strategy, t: TypeId) -> bool {
        self.pairs.contains(&(s, t))
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.player == other.player && self.pairs.is_subset(&other.pairs)
    }

    pub fn intersection(&self, other: &Event) -> Event {
        debug_assert_eq!(self.player, other.player);
        Event {
            player: self.player,
            pairs: self.pairs.intersection(&other.pairs).copied().collect(),
        }
    }

    /// Proj_{S_i}: the strategies that occur in the event.
    pub fn strategy_projection(&self) -> BTreeSet<Strategy> {
        self.pairs.iter().map(|&(s, _)| s).collect()
    }

    /// Image under (Id_{S_i}, φ_i).
    pub fn map_types(&self, map: &[TypeId]) -> Event {
        Event {
            player: self.player,
            pairs: self.pairs.iter().map(|&(s, t)| (s, map[t])).collect(),
        }
    }
}

/// Π_{j≠i} E_j, rearranged into (s_{-i}, t_{-i}) profiles.
///
/// `parts` must hold one event per opponent of `player`, in ascending player
/// order.
pub fn product_event(player: Player, parts: &[&Event]) -> JointEvent {
    for (k, part) in parts.iter().enumerate() {
        let expected = if k < player { k } else { k + 1 };
        assert_eq!(
            part.player, expected,
            "product_event: parts must list the opponents of player {player} in order"
        );
    }
    let mut profiles: Vec<OppState> = vec![OppState::new(Vec::new(), Vec::new())];
    for part in parts {
        profiles = profiles
            .into_iter()
            .flat_map(|prefix| {
                part.pairs.iter().map(move |&(s, t)| {
                    let mut next = prefix.clone();
                    next.strategies.push(s);
                    next.types.push(t);
                    next
                })
            })
            .collect();
    }
    profiles.into_iter().collect()
}

/// Proj_{S_{-i}} of a joint event.
pub fn joint_strategy_projection(event: &JointEvent) -> BTreeSet<Vec<Strategy>> {
    event.iter().map(|s| s.strategies.clone()).collect()
}
