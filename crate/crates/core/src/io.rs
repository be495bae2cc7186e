//! JSON instance files.
//!
//! ```json
//! {
//!   "players": [
//!     { "name": "a", "strategies": ["s_a"],
//!       "payoffs": { "s_a|s_b_bar": "0/1", "s_a|s_b_hat": "0/1" } },
//!     ...
//!   ],
//!   "structures": [
//!     { "name": "T",
//!       "players": [
//!         { "player": "a",
//!           "types": [ { "name": "t_a",
//!                        "belief": [ [ { "profile": ["s_b_bar", "t_b_bar"], "p": "1/1" } ] ] } ] },
//!         ...
//!       ] }
//!   ]
//! }
//! ```
//!
//! Payoff keys list one strategy per player, joined with `|`. A belief profile
//! lists `strategy, type` for each opponent in player order. Rationals are
//! `"p/q"` strings.

use std::collections::HashMap;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::measure::{Lps, Measure};
use crate::rational::Rational;
use crate::structure::{OppState, TypeStructure};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub players: Vec<PlayerDoc>,
    pub structures: Vec<StructureDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerDoc {
    pub name: String,
    pub strategies: Vec<String>,
    pub payoffs: IndexMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub players: Vec<StructurePlayerDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructurePlayerDoc {
    pub player: String,
    pub types: Vec<TypeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeDoc {
    pub name: String,
    pub belief: Vec<Vec<MassDoc>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassDoc {
    pub profile: Vec<String>,
    pub p: String,
}

/// A parsed instance: one game and one or two structures over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub game: Arc<Game>,
    pub structures: Vec<TypeStructure>,
    pub names: Vec<Option<String>>,
}

impl Instance {
    pub fn new(structures: Vec<TypeStructure>) -> Instance {
        let game = Arc::clone(structures[0].game());
        let names = vec![None; structures.len()];
        Instance {
            game,
            structures,
            names,
        }
    }

    pub fn named(mut self, names: &[&str]) -> Instance {
        self.names = names.iter().map(|n| Some(n.to_string())).collect();
        self
    }

    pub fn structure_label(&self, k: usize) -> String {
        self.names
            .get(k)
            .cloned()
            .flatten()
            .unwrap_or_else(|| format!("#{}", k + 1))
    }
}

fn parse_rational(path: &str, text: &str) -> Result<Rational> {
    text.parse()
        .map_err(|e: crate::rational::ParseRationalError| Error::invalid(path, e.to_string()))
}

fn index_of(names: &[String], path: &str, what: &'static str, name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::DanglingReference {
            path: path.to_string(),
            what,
            name: name.to_string(),
        })
}

/// Builds the game from the player list.
pub fn validate_game(players: &[PlayerDoc]) -> Result<Game> {
    if players.len() < 2 {
        return Err(Error::TooFewPlayers(players.len()));
    }
    let names: Vec<String> = players.iter().map(|p| p.name.clone()).collect();
    let strategies: Vec<Vec<String>> = players.iter().map(|p| p.strategies.clone()).collect();
    let sizes: Vec<usize> = strategies.iter().map(Vec::len).collect();
    for (i, s) in sizes.iter().enumerate() {
        if *s == 0 {
            return Err(Error::invalid(
                format!("players[{i}].strategies"),
                "strategy set is empty",
            ));
        }
    }
    let count: usize = sizes.iter().product();
    let mut payoffs = Vec::with_capacity(players.len());
    for (i, player) in players.iter().enumerate() {
        let mut table: Vec<Option<Rational>> = vec![None; count];
        for (key, value) in &player.payoffs {
            let path = format!("players[{i}].payoffs[\"{key}\"]");
            let parts: Vec<&str> = key.split('|').collect();
            if parts.len() != players.len() {
                return Err(Error::invalid(
                    path,
                    format!(
                        "profile names {} strategies, expected {}",
                        parts.len(),
                        players.len()
                    ),
                ));
            }
            let mut flat = 0;
            for (j, part) in parts.iter().enumerate() {
                let s = index_of(&strategies[j], &path, "strategy", part)?;
                flat = flat * sizes[j] + s;
            }
            if table[flat].is_some() {
                return Err(Error::invalid(path, "duplicate payoff entry"));
            }
            table[flat] = Some(parse_rational(&path, value)?);
        }
        if let Some(missing) = table.iter().position(Option::is_none) {
            let profile = crate::game::all_profiles(&sizes)[missing]
                .iter()
                .enumerate()
                .map(|(j, &s)| strategies[j][s].as_str())
                .collect::<Vec<_>>()
                .join("|");
            return Err(Error::invalid(
                format!("players[{i}].payoffs"),
                format!("missing payoff for profile `{profile}`"),
            ));
        }
        payoffs.push(table.into_iter().map(Option::unwrap).collect());
    }
    Game::new(names, strategies, payoffs)
}

/// Resolves names, checks every level is a probability measure and builds the
/// structure. Errors carry the document path of the offending item.
pub fn validate_structure(game: &Arc<Game>, doc: &StructureDoc) -> Result<TypeStructure> {
    let n = game.num_players();
    if doc.players.len() != n {
        return Err(Error::invalid(
            "players",
            format!("expected {n} player entries, got {}", doc.players.len()),
        ));
    }
    for (i, entry) in doc.players.iter().enumerate() {
        if entry.player != game.player_name(i) {
            return Err(Error::invalid(
                format!("players[{i}].player"),
                format!("expected `{}`, got `{}`", game.player_name(i), entry.player),
            ));
        }
        if entry.types.is_empty() {
            return Err(Error::invalid(
                format!("players[{i}].types"),
                "type set is empty",
            ));
        }
    }
    let types: Vec<Vec<String>> = doc
        .players
        .iter()
        .map(|p| p.types.iter().map(|t| t.name.clone()).collect())
        .collect();
    let mut beliefs = Vec::with_capacity(n);
    for (i, entry) in doc.players.iter().enumerate() {
        let opponents = game.opponents(i);
        let mut per_type = Vec::with_capacity(entry.types.len());
        for (t, ty) in entry.types.iter().enumerate() {
            let belief_path = format!("players[{i}].types[{t}].belief");
            if ty.belief.is_empty() {
                return Err(Error::EmptyLps { path: belief_path });
            }
            let mut levels = Vec::with_capacity(ty.belief.len());
            for (l, level) in ty.belief.iter().enumerate() {
                let level_path = format!("{belief_path}[{l}]");
                let mut entries = Vec::with_capacity(level.len());
                let mut seen = HashMap::new();
                for (e, mass) in level.iter().enumerate() {
                    let path = format!("{level_path}[{e}]");
                    if mass.profile.len() != 2 * opponents.len() {
                        return Err(Error::invalid(
                            format!("{path}.profile"),
                            format!(
                                "expected {} names (strategy and type per opponent)",
                                2 * opponents.len()
                            ),
                        ));
                    }
                    let mut strategies = Vec::with_capacity(opponents.len());
                    let mut type_ids = Vec::with_capacity(opponents.len());
                    for (k, &j) in opponents.iter().enumerate() {
                        let ppath = format!("{path}.profile[{}]", 2 * k);
                        strategies.push(index_of(
                            game.strategies(j),
                            &ppath,
                            "strategy",
                            &mass.profile[2 * k],
                        )?);
                        let tpath = format!("{path}.profile[{}]", 2 * k + 1);
                        type_ids.push(index_of(
                            &types[j],
                            &tpath,
                            "type",
                            &mass.profile[2 * k + 1],
                        )?);
                    }
                    let state = OppState::new(strategies, type_ids);
                    if let Some(prev) = seen.insert(state.clone(), e) {
                        return Err(Error::invalid(
                            path,
                            format!("profile repeats entry {prev} of the same level"),
                        ));
                    }
                    entries.push((state, parse_rational(&format!("{path}.p"), &mass.p)?));
                }
                levels.push(Measure::new(entries).map_err(|e| e.at(&level_path))?);
            }
            per_type.push(Lps::new(levels).expect("nonempty"));
        }
        beliefs.push(per_type);
    }
    TypeStructure::new(Arc::clone(game), types, beliefs)
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates an instance document holding one or two structures.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(syntax_error)?;
    instance_from_doc(&doc)
}

pub fn instance_from_doc(doc: &InstanceDoc) -> Result<Instance> {
    let game = Arc::new(validate_game(&doc.players)?);
    if doc.structures.is_empty() || doc.structures.len() > 2 {
        return Err(Error::invalid(
            "structures",
            format!(
                "expected one or two structures, got {}",
                doc.structures.len()
            ),
        ));
    }
    let mut structures = Vec::with_capacity(doc.structures.len());
    for (k, s) in doc.structures.iter().enumerate() {
        structures
            .push(validate_structure(&game, s).map_err(|e| e.at(&format!("structures[{k}].")))?);
    }
    Ok(Instance {
        game,
        structures,
        names: doc.structures.iter().map(|s| s.name.clone()).collect(),
    })
}

pub fn game_doc(game: &Game) -> Vec<PlayerDoc> {
    let profiles = game.profiles();
    (0..game.num_players())
        .map(|i| PlayerDoc {
            name: game.player_name(i).to_string(),
            strategies: game.strategies(i).to_vec(),
            payoffs: profiles
                .iter()
                .map(|p| {
                    let key = p
                        .iter()
                        .enumerate()
                        .map(|(j, &s)| game.strategy_name(j, s))
                        .collect::<Vec<_>>()
                        .join("|");
                    (key, game.payoff_at(i, p).to_string())
                })
                .collect(),
        })
        .collect()
}

pub fn structure_doc(structure: &TypeStructure, name: Option<String>) -> StructureDoc {
    let game = structure.game();
    StructureDoc {
        name,
        players: (0..game.num_players())
            .map(|i| {
                let opponents = game.opponents(i);
                StructurePlayerDoc {
                    player: game.player_name(i).to_string(),
                    types: (0..structure.num_types(i))
                        .map(|t| TypeDoc {
                            name: structure.type_name(i, t).to_string(),
                            belief: structure
                                .belief(i, t)
                                .levels()
                                .iter()
                                .map(|level| {
                                    level
                                        .iter()
                                        .map(|(state, p)| MassDoc {
                                            profile: opponents
                                                .iter()
                                                .enumerate()
                                                .flat_map(|(k, &j)| {
                                                    [
                                                        game.strategy_name(j, state.strategies[k])
                                                            .to_string(),
                                                        structure
                                                            .type_name(j, state.types[k])
                                                            .to_string(),
                                                    ]
                                                })
                                                .collect(),
                                            p: p.to_string(),
                                        })
                                        .collect()
                                })
                                .collect(),
                        })
                        .collect(),
                }
            })
            .collect(),
    }
}

pub fn instance_doc(instance: &Instance) -> InstanceDoc {
    InstanceDoc {
        players: game_doc(&instance.game),
        structures: instance
            .structures
            .iter()
            .enumerate()
            .map(|(k, s)| structure_doc(s, instance.names.get(k).cloned().flatten()))
            .collect(),
    }
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut text = serde_json::to_string_pretty(&instance_doc(instance))
        .expect("instance documents always serialize");
    text.push('\n');
    text
}
