//! Comparing behavioral implications of two structures over the same game.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::epistemic::{rcbr_iterate, RcbrTrace};
use crate::error::{Error, Result};
use crate::game::{Player, Strategy};
use crate::hierarchy::{check_morphism, stable_partition, Morphism};
use crate::structure::TypeStructure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionRow {
    pub level: usize,
    pub player: Player,
    pub first: BTreeSet<Strategy>,
    pub second: BTreeSet<Strategy>,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub rows: Vec<ProjectionRow>,
    pub stable_depth: usize,
    pub first_stabilized_at: usize,
    pub second_stabilized_at: usize,
    pub verdict: bool,
}

fn traces(
    first: &TypeStructure,
    second: &TypeStructure,
) -> Result<(RcbrTrace, RcbrTrace, usize, usize)> {
    if first.game() != second.game() {
        return Err(Error::MismatchedGames);
    }
    let (_, stable_depth) = stable_partition(&[first, second])?;
    let a = rcbr_iterate(first);
    let b = rcbr_iterate(second);
    let last = stable_depth.max(a.stabilized_at()).max(b.stabilized_at()) + 1;
    Ok((a, b, stable_depth, last))
}

/// Compares Proj_{S_i}(R_i^m) across the two structures for every player and
/// every level from 1 through one past the last stabilization point.
pub fn verify_invariance(
    first: &TypeStructure,
    second: &TypeStructure,
) -> Result<InvarianceReport> {
    let (a, b, stable_depth, last) = traces(first, second)?;
    let mut rows = Vec::new();
    for level in 1..=last {
        for player in 0..first.num_players() {
            let p = a.event(level, player).strategy_projection();
            let q = b.event(level, player).strategy_projection();
            rows.push(ProjectionRow {
                level,
                player,
                equal: p == q,
                first: p,
                second: q,
            });
        }
    }
    Ok(InvarianceReport {
        verdict: rows.iter().all(|r| r.equal),
        rows,
        stable_depth,
        first_stabilized_at: a.stabilized_at(),
        second_stabilized_at: b.stabilized_at(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportRow {
    pub level: usize,
    pub player: Player,
    /// (Id, φ_i)(R_i^m) ⊆ R_i^{∘,m}.
    pub inclusion: bool,
    /// Proj(R_i^m) = Proj((Id, φ_i)(R_i^m)).
    pub projection_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub rows: Vec<TransportRow>,
    pub holds: bool,
}

/// Checks that the hierarchy morphism `phi` carries every R^m level of
/// `first` into the corresponding level of `second`.
pub fn transport_check(
    first: &TypeStructure,
    second: &TypeStructure,
    phi: &Morphism,
) -> Result<TransportReport> {
    check_morphism(first, second, phi)?;
    let (a, b, _, last) = traces(first, second)?;
    let mut rows = Vec::new();
    for level in 0..=last {
        for player in 0..first.num_players() {
            let source = a.event(level, player);
            let image = source.map_types(&phi.maps[player]);
            rows.push(TransportRow {
                level,
                player,
                inclusion: image.is_subset(b.event(level, player)),
                projection_identity: source.strategy_projection() == image.strategy_projection(),
            });
        }
    }
    Ok(TransportReport {
        holds: rows.iter().all(|r| r.inclusion && r.projection_identity),
        rows,
    })
}
