//! Lexicographic expected payoffs, best replies and cautiousness.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::{Game, Player, Strategy};
use crate::rational::Rational;
use crate::structure::{marginal_lps, Belief, FirstOrder, TypeId, TypeStructure};

/// Expected payoffs of one strategy, one entry per LPS level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PayoffVector(pub Vec<Rational>);

impl PayoffVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The order ≥_L: compare at the first index where the vectors differ.
pub fn lex_compare(x: &PayoffVector, y: &PayoffVector) -> Result<Ordering> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.0
        .iter()
        .zip(&y.0)
        .map(|(a, b)| a.cmp(b))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal))
}

pub fn lex_expected_payoffs(
    game: &Game,
    player: Player,
    strategy: Strategy,
    first_order: &FirstOrder,
) -> Result<PayoffVector> {
    if strategy >= game.num_strategies(player) {
        return Err(Error::UnknownStrategy { player, strategy });
    }
    Ok(PayoffVector(
        first_order
            .levels()
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(opp, p)| p * game.payoff(player, strategy, opp))
                    .sum()
            })
            .collect(),
    ))
}

fn payoff_table(game: &Game, player: Player, first_order: &FirstOrder) -> Vec<PayoffVector> {
    (0..game.num_strategies(player))
        .map(|s| {
            lex_expected_payoffs(game, player, s, first_order).expect("strategy index in range")
        })
        .collect()
}

/// Whether `strategy` is a lexicographic best reply to the strategy marginal
/// of `belief`.
pub fn optimal_under(
    game: &Game,
    player: Player,
    strategy: Strategy,
    belief: &Belief,
) -> Result<bool> {
    if strategy >= game.num_strategies(player) {
        return Err(Error::UnknownStrategy { player, strategy });
    }
    let table = payoff_table(game, player, &marginal_lps(belief));
    let own = &table[strategy];
    Ok(table
        .iter()
        .all(|other| lex_compare(own, other).expect("same length").is_ge()))
}

/// Every strategy optimal under `belief`. Never empty.
pub fn best_replies(game: &Game, player: Player, belief: &Belief) -> BTreeSet<Strategy> {
    let table = payoff_table(game, player, &marginal_lps(belief));
    let best = table
        .iter()
        .max_by(|a, b| lex_compare(a, b).expect("same length"))
        .expect("strategy sets are nonempty");
    table
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == best)
        .map(|(s, _)| s)
        .collect()
}

/// A type is cautious when its first-order belief has full support on S_{-i}.
pub fn is_cautious(structure: &TypeStructure, player: Player, t: TypeId) -> Result<bool> {
    let belief = structure.checked_belief(player, t)?;
    let first_order = marginal_lps(belief);
    let covered = first_order.support().len();
    Ok(covered == structure.game().opponent_profiles(player).len())
}
