//! Cautious belief and iterated cautious rationality.
//!
//! Level 0 of every trace is the full state space S_i × T_i. For the
//! rationality trace, level 1 holds the cautiously rational pairs and
//! level m+1 is level m intersected with the pairs whose type cautiously
//! believes the product of the opponents' level-m events.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::event::{product_event, Event, JointEvent};
use crate::game::{Player, Strategy};
use crate::lex::{best_replies, is_cautious};
use crate::structure::{Belief, TypeStructure};

/// Whether `event` is cautiously believed under `belief` at level `level`
/// (1-based): every level up to `level` puts mass one on the event, and every
/// elementary cylinder the event meets gets positive mass at some level up to
/// `level`.
pub fn cautiously_believed_at_level(
    belief: &Belief,
    event: &JointEvent,
    level: usize,
) -> Result<bool> {
    if event.is_empty() {
        return Err(Error::EmptyEvent);
    }
    if level == 0 || level > belief.len() {
        return Err(Error::LevelOutOfRange {
            level,
            len: belief.len(),
        });
    }
    let prefix = &belief.levels()[..level];
    if !prefix
        .iter()
        .all(|m| m.mass_where(|state| event.contains(state)).is_one())
    {
        return Ok(false);
    }
    Ok(cylinders_covered(belief, event, level))
}

// Strategy profiles s_{-i} whose cylinder meets `event` must each carry
// positive mass inside the event at some level below `level`.
fn cylinders_covered(belief: &Belief, event: &JointEvent, level: usize) -> bool {
    let mut uncovered: BTreeSet<&Vec<Strategy>> = event.iter().map(|s| &s.strategies).collect();
    for m in &belief.levels()[..level] {
        for (state, _) in m.iter() {
            if event.contains(state) {
                uncovered.remove(&state.strategies);
            }
        }
    }
    uncovered.is_empty()
}

/// The least level at which `event` is cautiously believed, if any.
pub fn cautiously_believes(belief: &Belief, event: &JointEvent) -> Result<Option<usize>> {
    if event.is_empty() {
        return Err(Error::EmptyEvent);
    }
    let mut uncovered: BTreeSet<&Vec<Strategy>> = event.iter().map(|s| &s.strategies).collect();
    for (l, m) in belief.levels().iter().enumerate() {
        // Condition (i) is prefix-closed: once a level misses the event no
        // longer prefix can work.
        if !m.mass_where(|state| event.contains(state)).is_one() {
            return Ok(None);
        }
        for (state, _) in m.iter() {
            uncovered.remove(&state.strategies);
        }
        if uncovered.is_empty() {
            return Ok(Some(l + 1));
        }
    }
    Ok(None)
}

/// B_i^c(E): all (s_i, t_i) whose type cautiously believes `event`. The empty
/// event is believed by nobody.
pub fn cautious_belief_operator(
    structure: &TypeStructure,
    player: Player,
    event: &JointEvent,
) -> Event {
    if event.is_empty() {
        return Event::empty(player);
    }
    let believers: Vec<usize> = (0..structure.num_types(player))
        .filter(|&t| {
            cautiously_believes(structure.belief(player, t), event)
                .expect("event is nonempty")
                .is_some()
        })
        .collect();
    Event::from_pairs(
        player,
        (0..structure.game().num_strategies(player))
            .flat_map(|s| believers.iter().map(move |&t| (s, t))),
    )
}

/// The cautiously rational pairs of `player`.
pub fn cautiously_rational(structure: &TypeStructure, player: Player) -> Event {
    let game = structure.game();
    let mut pairs = BTreeSet::new();
    for t in 0..structure.num_types(player) {
        if !is_cautious(structure, player, t).expect("type exists") {
            continue;
        }
        for s in best_replies(game, player, structure.belief(player, t)) {
            pairs.insert((s, t));
        }
    }
    Event { player, pairs }
}

pub fn strategy_projection(event: &Event) -> BTreeSet<Strategy> {
    event.strategy_projection()
}

/// A decreasing sequence of per-player events, stored up to and including the
/// first repeated level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RcbrTrace {
    levels: Vec<Vec<Event>>,
    stabilized_at: usize,
}

impl RcbrTrace {
    /// The least m with level m equal to level m+1.
    pub fn stabilized_at(&self) -> usize {
        self.stabilized_at
    }

    /// Level `m`; levels past the fixpoint repeat it.
    pub fn level(&self, m: usize) -> &[Event] {
        &self.levels[m.min(self.levels.len() - 1)]
    }

    pub fn event(&self, m: usize, player: Player) -> &Event {
        &self.level(m)[player]
    }

    /// The fixpoint R^∞.
    pub fn limit(&self) -> &[Event] {
        self.levels.last().expect("trace has levels")
    }

    /// Stored levels, 0 through `stabilized_at + 1`.
    pub fn levels(&self) -> &[Vec<Event>] {
        &self.levels
    }
}

fn full_level(structure: &TypeStructure) -> Vec<Event> {
    (0..structure.num_players())
        .map(|i| Event::full(structure, i))
        .collect()
}

fn step(structure: &TypeStructure, current: &[Event]) -> Vec<Event> {
    (0..structure.num_players())
        .map(|i| {
            let parts: Vec<&Event> = current
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, e)| e)
                .collect();
            let opponents = product_event(i, &parts);
            current[i].intersection(&cautious_belief_operator(structure, i, &opponents))
        })
        .collect()
}

/// Iterates `level ∩ B^c(product of opponents' level)` from `base` until a
/// level repeats.
pub fn iterate_assumption(structure: &TypeStructure, base: Vec<Event>) -> Result<RcbrTrace> {
    if base.len() != structure.num_players() {
        return Err(Error::invalid(
            "base",
            format!(
                "expected {} events, got {}",
                structure.num_players(),
                base.len()
            ),
        ));
    }
    for (i, e) in base.iter().enumerate() {
        if e.player != i {
            return Err(Error::invalid(
                format!("base[{i}]"),
                "event belongs to another player",
            ));
        }
        for &(s, t) in &e.pairs {
            if s >= structure.game().num_strategies(i) {
                return Err(Error::UnknownStrategy {
                    player: i,
                    strategy: s,
                });
            }
            if t >= structure.num_types(i) {
                return Err(Error::UnknownType {
                    player: i,
                    type_id: t,
                });
            }
        }
    }
    let mut levels = vec![full_level(structure), base];
    let stabilized_at = if levels[0] == levels[1] {
        0
    } else {
        loop {
            let next = step(structure, levels.last().unwrap());
            let done = &next == levels.last().unwrap();
            levels.push(next);
            if done {
                break levels.len() - 2;
            }
        }
    };
    Ok(RcbrTrace {
        levels,
        stabilized_at,
    })
}

/// R^m for all m: cautious rationality and m-th order cautious belief in
/// cautious rationality.
pub fn rcbr_iterate(structure: &TypeStructure) -> RcbrTrace {
    let base = (0..structure.num_players())
        .map(|i| cautiously_rational(structure, i))
        .collect();
    iterate_assumption(structure, base).expect("cautiously rational pairs are valid events")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1;
    use crate::structure::{dirac_belief, OppState};

    fn joint(states: &[(usize, usize)]) -> JointEvent {
        states
            .iter()
            .map(|&(s, t)| OppState::new(vec![s], vec![t]))
            .collect()
    }

    #[test]
    fn believed_at_level_examples() {
        let (t, _) = example1();
        let ann = t.belief(0, 0);
        assert!(cautiously_believed_at_level(ann, &joint(&[(0, 0)]), 1).unwrap());
        for m in 1..=3 {
            assert!(!cautiously_believed_at_level(ann, &joint(&[(1, 0)]), m).unwrap());
        }
        let narrow = dirac_belief(vec![0], vec![0]);
        let full = joint(&[(0, 0), (1, 0)]);
        assert!(!cautiously_believed_at_level(&narrow, &full, 1).unwrap());
        assert_eq!(
            cautiously_believed_at_level(ann, &JointEvent::new(), 1),
            Err(Error::EmptyEvent)
        );
        assert_eq!(
            cautiously_believed_at_level(ann, &full, 4),
            Err(Error::LevelOutOfRange { level: 4, len: 3 })
        );
    }

    #[test]
    fn least_level_examples() {
        let (t, t_circ) = example1();
        assert_eq!(
            cautiously_believes(t_circ.belief(0, 0), &joint(&[(0, 0), (0, 1)])).unwrap(),
            Some(1)
        );
        assert_eq!(
            cautiously_believes(t.belief(0, 0), &joint(&[(1, 0)])).unwrap(),
            None
        );
        // Full space under the cautious Ann type: ŝ_b first appears at level 2.
        assert_eq!(
            cautiously_believes(t.belief(0, 0), &joint(&[(0, 0), (1, 0)])).unwrap(),
            Some(2)
        );
    }

    #[test]
    fn operator_examples() {
        let (t, _) = example1();
        let e = cautious_belief_operator(&t, 0, &joint(&[(0, 0)]));
        assert_eq!(e, Event::from_pairs(0, [(0, 0)]));
        assert_eq!(
            cautious_belief_operator(&t, 0, &JointEvent::new()),
            Event::empty(0)
        );
        let full_b = product_event(0, &[&Event::full(&t, 1)]);
        assert_eq!(cautious_belief_operator(&t, 0, &full_b), Event::full(&t, 0));
    }

    #[test]
    fn example1_traces() {
        let (t, t_circ) = example1();
        let trace = rcbr_iterate(&t);
        assert_eq!(trace.stabilized_at(), 1);
        for m in 1..5 {
            assert_eq!(trace.event(m, 0), &Event::from_pairs(0, [(0, 0)]));
            assert_eq!(trace.event(m, 1), &Event::from_pairs(1, [(0, 0)]));
        }
        let trace = rcbr_iterate(&t_circ);
        assert_eq!(trace.stabilized_at(), 1);
        for m in 1..5 {
            assert_eq!(trace.event(m, 0), &Event::from_pairs(0, [(0, 0)]));
            assert_eq!(trace.event(m, 1), &Event::from_pairs(1, [(0, 0), (0, 1)]));
        }
    }

    #[test]
    fn base_variants() {
        let (t, _) = example1();
        let rational: Vec<Event> = (0..2).map(|i| cautiously_rational(&t, i)).collect();
        assert_eq!(iterate_assumption(&t, rational).unwrap(), rcbr_iterate(&t));
        let empty = iterate_assumption(&t, vec![Event::empty(0), Event::empty(1)]).unwrap();
        assert!(empty.limit().iter().all(Event::is_empty));
        assert_eq!(empty.stabilized_at(), 1);
        let full = iterate_assumption(&t, vec![Event::full(&t, 0), Event::full(&t, 1)]).unwrap();
        assert_eq!(full.stabilized_at(), 0);
        assert!(iterate_assumption(&t, vec![Event::empty(0)]).is_err());
    }
}
