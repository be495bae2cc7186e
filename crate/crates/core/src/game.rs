//! Finite games in strategic form.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Index of a player in [`Game::players`].
pub type Player = usize;
/// Index into one player's strategy list.
pub type Strategy = usize;

/// A finite game: at least two players, nonempty strategy sets, and one
/// exact payoff per player per pure strategy profile.
///
/// Payoff tables are stored flat, indexed by the mixed-radix encoding of a
/// full profile with player 0 as the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    players: Vec<String>,
    strategies: Vec<Vec<String>>,
    payoffs: Vec<Vec<Rational>>,
}

impl Game {
    pub fn new(
        players: Vec<String>,
        strategies: Vec<Vec<String>>,
        payoffs: Vec<Vec<Rational>>,
    ) -> Result<Game> {
        if players.len() < 2 {
            return Err(Error::TooFewPlayers(players.len()));
        }
        if strategies.len() != players.len() || payoffs.len() != players.len() {
            return Err(Error::invalid(
                "players",
                "strategy and payoff tables must have one entry per player",
            ));
        }
        check_unique("players", &players)?;
        for (i, names) in strategies.iter().enumerate() {
            let path = format!("players[{i}].strategies");
            if names.is_empty() {
                return Err(Error::invalid(path, "strategy set is empty"));
            }
            check_unique(&path, names)?;
        }
        let profiles: usize = strategies.iter().map(Vec::len).product();
        for (i, table) in payoffs.iter().enumerate() {
            if table.len() != profiles {
                return Err(Error::invalid(
                    format!("players[{i}].payoffs"),
                    format!("expected {profiles} payoff entries, got {}", table.len()),
                ));
            }
        }
        Ok(Game {
            players,
            strategies,
            payoffs,
        })
    }

    /// Builds a game from a payoff function over full profiles.
    pub fn from_fn(
        players: Vec<String>,
        strategies: Vec<Vec<String>>,
        mut payoff: impl FnMut(Player, &[Strategy]) -> Rational,
    ) -> Result<Game> {
        let sizes: Vec<usize> = strategies.iter().map(Vec::len).collect();
        let profiles = all_profiles(&sizes);
        let payoffs = (0..players.len())
            .map(|i| profiles.iter().map(|p| payoff(i, p)).collect())
            .collect();
        Game::new(players, strategies, payoffs)
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn player_name(&self, player: Player) -> &str {
        &self.players[player]
    }

    pub fn strategies(&self, player: Player) -> &[String] {
        &self.strategies[player]
    }

    pub fn num_strategies(&self, player: Player) -> usize {
        self.strategies[player].len()
    }

    pub fn strategy_name(&self, player: Player, s: Strategy) -> &str {
        &self.strategies[player][s]
    }

    /// Opponents of `player` in ascending order.
    pub fn opponents(&self, player: Player) -> Vec<Player> {
        (0..self.num_players()).filter(|&j| j != player).collect()
    }

    /// All opponent strategy profiles of `player` (the set S_{-i}) in
    /// lexicographic order.
    pub fn opponent_profiles(&self, player: Player) -> Vec<Vec<Strategy>> {
        let sizes: Vec<usize> = self
            .opponents(player)
            .into_iter()
            .map(|j| self.num_strategies(j))
            .collect();
        all_profiles(&sizes)
    }

    /// All full strategy profiles in table order.
    pub fn profiles(&self) -> Vec<Vec<Strategy>> {
        let sizes: Vec<usize> = self.strategies.iter().map(Vec::len).collect();
        all_profiles(&sizes)
    }

    pub fn same_strategy_sets(&self, other: &Game) -> bool {
        self.players == other.players && self.strategies == other.strategies
    }

    fn flat_index(&self, profile: &[Strategy]) -> usize {
        profile
            .iter()
            .zip(&self.strategies)
            .fold(0, |acc, (&s, set)| acc * set.len() + s)
    }

    pub fn payoff_at(&self, player: Player, profile: &[Strategy]) -> &Rational {
        &self.payoffs[player][self.flat_index(profile)]
    }

    /// π_i(s_i, s_{-i}).
    pub fn payoff(&self, player: Player, own: Strategy, opponents: &[Strategy]) -> &Rational {
        let mut full = Vec::with_capacity(self.num_players());
        full.extend_from_slice(&opponents[..player]);
        full.push(own);
        full.extend_from_slice(&opponents[player..]);
        self.payoff_at(player, &full)
    }
}

/// Cartesian product of `0..sizes[k]`, lexicographic.
pub fn all_profiles(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(sizes.len())];
    for &n in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |s| {
                    let mut p = prefix.clone();
                    p.push(s);
                    p
                })
            })
            .collect();
    }
    out
}

fn check_unique(path: &str, names: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for name in names {
        if !seen.insert(name) {
            return Err(Error::invalid(path, format!("duplicate name `{name}`")));
        }
    }
    Ok(())
}
