use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{path}: not a probability measure ({reason})")]
    NonProbability { path: String, reason: String },

    #[error("{path}: unknown {what} `{name}`")]
    DanglingReference {
        path: String,
        what: &'static str,
        name: String,
    },

    #[error("{path}: belief has no levels")]
    EmptyLps { path: String },

    #[error("a game needs at least two players, got {0}")]
    TooFewPlayers(usize),

    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("payoff vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("player {player} has no strategy {strategy}")]
    UnknownStrategy { player: usize, strategy: usize },

    #[error("player {player} has no type {type_id}")]
    UnknownType { player: usize, type_id: usize },

    #[error("cautious belief is only defined for nonempty events")]
    EmptyEvent,

    #[error("level {level} is outside 1..={len}")]
    LevelOutOfRange { level: usize, len: usize },

    #[error("type structures are defined over different games")]
    MismatchedGames,

    #[error("explicit hierarchies are limited to depth {max}, got {depth}")]
    DepthTooLarge { depth: usize, max: usize },

    #[error("not a hierarchy morphism: {0}")]
    InvalidMorphism(String),

    #[error("infeasible generator bounds: {0}")]
    InfeasibleBounds(String),
}

impl Error {
    pub(crate) fn non_probability(path: impl Into<String>, total: &Rational) -> Error {
        Error::NonProbability {
            path: path.into(),
            reason: format!("masses sum to {total}"),
        }
    }

    pub(crate) fn invalid(path: impl Into<String>, reason: impl Into<String>) -> Error {
        Error::Invalid {
            path: path.into(),
            reason: reason.into(),
        }
    }

    /// Prefix the document path of errors that carry one.
    pub fn at(self, prefix: &str) -> Error {
        let join = |p: String| {
            if p.is_empty() {
                prefix.to_string()
            } else {
                format!("{prefix}{p}")
            }
        };
        match self {
            Error::NonProbability { path, reason } => Error::NonProbability {
                path: join(path),
                reason,
            },
            Error::DanglingReference { path, what, name } => Error::DanglingReference {
                path: join(path),
                what,
                name,
            },
            Error::EmptyLps { path } => Error::EmptyLps { path: join(path) },
            Error::Invalid { path, reason } => Error::Invalid {
                path: join(path),
                reason,
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
