//! Belief hierarchies of types, compared across one or two structures.
//!
//! Two types share a class at depth m exactly when their m-th order beliefs
//! coincide. Depth 1 compares strategy marginals. Depth m+1 compares the
//! image of the belief under `(s_{-i}, t_{-i}) ↦ (s_{-i}, depth-m classes of
//! t_{-i})`. Class labels are assigned in order of first appearance, so
//! two partitions are equal iff their label tables are equal.
//!
//! [`explicit_hierarchy`] materialises the hierarchy terms themselves for
//! small depths; it exists to cross-check the partition refinement.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{Player, Strategy};
use crate::measure::Lps;
use crate::structure::{marginal_lps, TypeId, TypeStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Origin {
    First,
    Second,
}

impl Origin {
    pub fn index(self) -> usize {
        match self {
            Origin::First => 0,
            Origin::Second => 1,
        }
    }

    fn from_index(k: usize) -> Origin {
        if k == 0 {
            Origin::First
        } else {
            Origin::Second
        }
    }
}

/// A type in the disjoint union of the compared structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TaggedType {
    pub origin: Origin,
    pub player: Player,
    pub type_id: TypeId,
}

// labels[origin][player][type] -> class id
type Labels = Vec<Vec<Vec<usize>>>;
// A belief pushed forward to (s_{-i}, opponents' class ids).
type ClassKey = Lps<(Vec<Strategy>, Vec<usize>)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyPartition {
    pub depth: usize,
    /// Per player, the classes in label order; members in tag order.
    pub classes: Vec<Vec<Vec<TaggedType>>>,
    #[serde(skip)]
    labels: Labels,
}

impl HierarchyPartition {
    fn from_labels(depth: usize, labels: Labels) -> HierarchyPartition {
        let players = labels[0].len();
        let mut classes: Vec<Vec<Vec<TaggedType>>> = vec![Vec::new(); players];
        for (k, per_origin) in labels.iter().enumerate() {
            for (player, per_player) in per_origin.iter().enumerate() {
                for (type_id, &class) in per_player.iter().enumerate() {
                    let slot = &mut classes[player];
                    if slot.len() <= class {
                        slot.resize(class + 1, Vec::new());
                    }
                    slot[class].push(TaggedType {
                        origin: Origin::from_index(k),
                        player,
                        type_id,
                    });
                }
            }
        }
        HierarchyPartition {
            depth,
            classes,
            labels,
        }
    }

    pub fn class_of(&self, tagged: TaggedType) -> usize {
        self.labels[tagged.origin.index()][tagged.player][tagged.type_id]
    }

    pub fn same_class(&self, a: TaggedType, b: TaggedType) -> bool {
        a.player == b.player && self.class_of(a) == self.class_of(b)
    }

    pub fn num_classes(&self, player: Player) -> usize {
        self.classes[player].len()
    }

    /// Same grouping of tagged types, regardless of depth.
    pub fn same_partition(&self, other: &HierarchyPartition) -> bool {
        self.labels == other.labels
    }
}

fn check_games(structures: &[&TypeStructure]) -> Result<()> {
    assert!(
        !structures.is_empty() && structures.len() <= 2,
        "hierarchies compare one or two structures"
    );
    if structures.len() == 2
        && !structures[0]
            .game()
            .same_strategy_sets(structures[1].game())
    {
        return Err(Error::MismatchedGames);
    }
    Ok(())
}

// One refinement round. With `prev == None` this is the depth-1 partition.
#[allow(clippy::needless_range_loop)]
fn next_labels(structures: &[&TypeStructure], prev: Option<&Labels>) -> Labels {
    let game = structures[0].game();
    let players = game.num_players();
    let mut labels: Labels = structures
        .iter()
        .map(|s| (0..players).map(|i| vec![0; s.num_types(i)]).collect())
        .collect();
    for i in 0..players {
        let opponents = game.opponents(i);
        let mut ids: HashMap<ClassKey, usize> = HashMap::new();
        for (k, structure) in structures.iter().enumerate() {
            for (t, belief) in structure.beliefs(i).iter().enumerate() {
                let key = belief.pushforward(|state| {
                    let classes = match prev {
                        None => Vec::new(),
                        Some(prev) => state
                            .types
                            .iter()
                            .zip(&opponents)
                            .map(|(&u, &j)| prev[k][j][u])
                            .collect(),
                    };
                    (state.strategies.clone(), classes)
                });
                let fresh = ids.len();
                labels[k][i][t] = *ids.entry(key).or_insert(fresh);
            }
        }
    }
    labels
}

/// Partition of all tagged types by equality of their depth-`depth`
/// hierarchies.
pub fn refine(structures: &[&TypeStructure], depth: usize) -> Result<HierarchyPartition> {
    check_games(structures)?;
    assert!(depth >= 1, "hierarchy depth starts at 1");
    let mut labels = next_labels(structures, None);
    for _ in 1..depth {
        labels = next_labels(structures, Some(&labels));
    }
    Ok(HierarchyPartition::from_labels(depth, labels))
}

/// Refines until one round changes nothing. Returns the partition at the
/// first such depth m*, which then holds for every depth ≥ m*.
pub fn stable_partition(structures: &[&TypeStructure]) -> Result<(HierarchyPartition, usize)> {
    check_games(structures)?;
    let mut depth = 1;
    let mut labels = next_labels(structures, None);
    loop {
        let next = next_labels(structures, Some(&labels));
        if next == labels {
            return Ok((HierarchyPartition::from_labels(depth, labels), depth));
        }
        labels = next;
        depth += 1;
    }
}

/// A point of X_i^k: opponents' strategies at depth 1, extended at each
/// further depth by the opponents' beliefs of the previous order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Base(Vec<Strategy>),
    Extend(Box<Point>, Vec<Lps<Point>>),
}

/// The first `depth` orders of a type's hierarchy: `levels[k - 1]` is the
/// k-th order belief, an LPS over X_i^k.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HierarchyTerm {
    pub levels: Vec<Lps<Point>>,
}

impl HierarchyTerm {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn truncate(&self, depth: usize) -> HierarchyTerm {
        HierarchyTerm {
            levels: self.levels[..depth].to_vec(),
        }
    }
}

/// Marginal of an order-(k+1) belief on X_i^k.
pub fn drop_last_order(belief: &Lps<Point>) -> Lps<Point> {
    belief.pushforward(|p| match p {
        Point::Extend(inner, _) => (**inner).clone(),
        Point::Base(_) => panic!("first-order beliefs have no lower order"),
    })
}

pub const MAX_EXPLICIT_DEPTH: usize = 3;

/// The literal hierarchy (d^1, …, d^depth) of every type, order by order.
/// `orders[k - 1][player][type]` is d^k.
fn all_orders(structure: &TypeStructure, depth: usize) -> Vec<Vec<Vec<Lps<Point>>>> {
    let game = structure.game();
    let players = game.num_players();
    let mut orders: Vec<Vec<Vec<Lps<Point>>>> = Vec::with_capacity(depth);
    for k in 0..depth {
        let layer = (0..players)
            .map(|i| {
                let opponents = game.opponents(i);
                (0..structure.num_types(i))
                    .map(|t| {
                        structure.belief(i, t).pushforward(|state| {
                            let mut point = Point::Base(state.strategies.clone());
                            for lower in orders.iter().take(k) {
                                let beliefs = state
                                    .types
                                    .iter()
                                    .zip(&opponents)
                                    .map(|(&u, &j)| lower[j][u].clone())
                                    .collect();
                                point = Point::Extend(Box::new(point), beliefs);
                            }
                            point
                        })
                    })
                    .collect()
            })
            .collect();
        orders.push(layer);
    }
    orders
}

pub fn explicit_hierarchy(
    structure: &TypeStructure,
    player: Player,
    t: TypeId,
    depth: usize,
) -> Result<HierarchyTerm> {
    if depth == 0 || depth > MAX_EXPLICIT_DEPTH {
        return Err(Error::DepthTooLarge {
            depth,
            max: MAX_EXPLICIT_DEPTH,
        });
    }
    structure.checked_belief(player, t)?;
    let orders = all_orders(structure, depth);
    Ok(HierarchyTerm {
        levels: orders
            .into_iter()
            .map(|mut layer| layer[player].swap_remove(t))
            .collect(),
    })
}

/// Explicit hierarchies of every type of every player.
pub fn explicit_hierarchies(
    structure: &TypeStructure,
    depth: usize,
) -> Result<Vec<Vec<HierarchyTerm>>> {
    if depth == 0 || depth > MAX_EXPLICIT_DEPTH {
        return Err(Error::DepthTooLarge {
            depth,
            max: MAX_EXPLICIT_DEPTH,
        });
    }
    let orders = all_orders(structure, depth);
    Ok((0..structure.num_players())
        .map(|i| {
            (0..structure.num_types(i))
                .map(|t| HierarchyTerm {
                    levels: orders.iter().map(|layer| layer[i][t].clone()).collect(),
                })
                .collect()
        })
        .collect())
}

/// First-order sanity: depth-1 term is the strategy marginal written as points.
pub fn first_order_term(structure: &TypeStructure, player: Player, t: TypeId) -> Lps<Point> {
    marginal_lps(structure.belief(player, t)).pushforward(|s| Point::Base(s.clone()))
}

/// One map per player from the source structure's types to the target's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub maps: Vec<Vec<TypeId>>,
}

impl Morphism {
    pub fn identity(structure: &TypeStructure) -> Morphism {
        Morphism {
            maps: (0..structure.num_players())
                .map(|i| (0..structure.num_types(i)).collect())
                .collect(),
        }
    }

    pub fn apply(&self, player: Player, t: TypeId) -> TypeId {
        self.maps[player][t]
    }

    pub fn compose(&self, then: &Morphism) -> Morphism {
        Morphism {
            maps: self
                .maps
                .iter()
                .enumerate()
                .map(|(i, m)| m.iter().map(|&t| then.maps[i][t]).collect())
                .collect(),
        }
    }
}

/// Checks shape and hierarchy preservation of `phi` from `first` to `second`.
pub fn check_morphism(first: &TypeStructure, second: &TypeStructure, phi: &Morphism) -> Result<()> {
    let (partition, _) = stable_partition(&[first, second])?;
    if phi.maps.len() != first.num_players() {
        return Err(Error::InvalidMorphism("wrong number of players".into()));
    }
    for (i, map) in phi.maps.iter().enumerate() {
        if map.len() != first.num_types(i) {
            return Err(Error::InvalidMorphism(format!(
                "player {i}: map covers {} of {} types",
                map.len(),
                first.num_types(i)
            )));
        }
        for (t, &u) in map.iter().enumerate() {
            if u >= second.num_types(i) {
                return Err(Error::InvalidMorphism(format!(
                    "player {i}: image {u} of type {t} does not exist"
                )));
            }
            let a = TaggedType {
                origin: Origin::First,
                player: i,
                type_id: t,
            };
            let b = TaggedType {
                origin: Origin::Second,
                player: i,
                type_id: u,
            };
            if !partition.same_class(a, b) {
                return Err(Error::InvalidMorphism(format!(
                    "player {i}: `{}` and `{}` induce different hierarchies",
                    first.type_name(i, t),
                    second.type_name(i, u)
                )));
            }
        }
    }
    Ok(())
}

fn morphism_in(
    partition: &HierarchyPartition,
    first: &TypeStructure,
    second: &TypeStructure,
    from: Origin,
) -> Option<Morphism> {
    let to = match from {
        Origin::First => Origin::Second,
        Origin::Second => Origin::First,
    };
    let (src, dst) = match from {
        Origin::First => (first, second),
        Origin::Second => (second, first),
    };
    let mut maps = Vec::with_capacity(src.num_players());
    for i in 0..src.num_players() {
        let mut map = Vec::with_capacity(src.num_types(i));
        for t in 0..src.num_types(i) {
            let class = partition.class_of(TaggedType {
                origin: from,
                player: i,
                type_id: t,
            });
            let image = (0..dst.num_types(i)).find(|&u| {
                partition.class_of(TaggedType {
                    origin: to,
                    player: i,
                    type_id: u,
                }) == class
            })?;
            map.push(image);
        }
        maps.push(map);
    }
    Some(Morphism { maps })
}

/// A hierarchy morphism from `first` to `second`, mapping each type to the
/// first target type (declaration order) with the same hierarchy.
pub fn find_morphism(first: &TypeStructure, second: &TypeStructure) -> Result<Option<Morphism>> {
    let (partition, _) = stable_partition(&[first, second])?;
    Ok(morphism_in(&partition, first, second, Origin::First))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub forward: Option<Morphism>,
    pub backward: Option<Morphism>,
    pub stable_depth: usize,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.forward.is_some() && self.backward.is_some()
    }
}

/// Hierarchy morphisms in both directions, when they exist.
pub fn hierarchy_equivalent(first: &TypeStructure, second: &TypeStructure) -> Result<Equivalence> {
    let (partition, stable_depth) = stable_partition(&[first, second])?;
    Ok(Equivalence {
        forward: morphism_in(&partition, first, second, Origin::First),
        backward: morphism_in(&partition, first, second, Origin::Second),
        stable_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example1;
    use crate::measure::Measure;
    use crate::rational::Rational;
    use crate::structure::dirac_belief;

    fn tag(origin: Origin, player: Player, type_id: TypeId) -> TaggedType {
        TaggedType {
            origin,
            player,
            type_id,
        }
    }

    #[test]
    fn example1_classes() {
        let (t, tc) = example1();
        for depth in 1..=3 {
            let p = refine(&[&t, &tc], depth).unwrap();
            assert_eq!(p.num_classes(0), 1);
            assert_eq!(p.num_classes(1), 1);
            assert_eq!(p.classes[1][0].len(), 3);
        }
        let (_, m) = stable_partition(&[&t, &tc]).unwrap();
        assert_eq!(m, 1);
    }

    #[test]
    fn example1_morphisms() {
        let (t, tc) = example1();
        let back = find_morphism(&tc, &t).unwrap().unwrap();
        assert_eq!(back.maps, vec![vec![0], vec![0, 0]]);
        let fwd = find_morphism(&t, &tc).unwrap().unwrap();
        assert_eq!(fwd.maps, vec![vec![0], vec![0]]);
        let eq = hierarchy_equivalent(&t, &tc).unwrap();
        assert!(eq.holds());
        assert_eq!(eq.backward, Some(back));
    }

    #[test]
    fn changed_third_level_breaks_equivalence() {
        let (t, _) = example1();
        let mut beliefs = vec![t.beliefs(0).to_vec(), t.beliefs(1).to_vec()];
        let levels = beliefs[0][0].levels().to_vec();
        let third = Measure::new([
            (
                levels[2].support().next().unwrap().clone(),
                Rational::new(1, 3),
            ),
            (
                levels[2].support().nth(1).unwrap().clone(),
                Rational::new(2, 3),
            ),
        ])
        .unwrap();
        beliefs[0][0] = Lps::new(vec![levels[0].clone(), levels[1].clone(), third]).unwrap();
        let variant = t
            .with_types(
                vec![t.type_names(0).to_vec(), t.type_names(1).to_vec()],
                beliefs,
            )
            .unwrap();
        let p = refine(&[&t, &variant], 1).unwrap();
        assert!(!p.same_class(tag(Origin::First, 0, 0), tag(Origin::Second, 0, 0)));
        assert!(!hierarchy_equivalent(&t, &variant).unwrap().holds());
        assert!(!hierarchy_equivalent(&variant, &t).unwrap().holds());
        assert_eq!(find_morphism(&t, &variant).unwrap(), None);
    }

    #[test]
    fn separation_at_depth_two() {
        // Ann: a0 believes Bob plays y0, a1 believes y1. Bob: b0 believes
        // (x0, a0), b1 believes (x0, a1); both have the same marginal.
        let game = std::sync::Arc::new(
            crate::game::Game::from_fn(
                vec!["ann".into(), "bob".into()],
                vec![vec!["x0".into()], vec!["y0".into(), "y1".into()]],
                |_, _| Rational::zero(),
            )
            .unwrap(),
        );
        let s = crate::structure::TypeStructure::new(
            game,
            vec![
                vec!["a0".into(), "a1".into()],
                vec!["b0".into(), "b1".into()],
            ],
            vec![
                vec![
                    dirac_belief(vec![0], vec![0]),
                    dirac_belief(vec![1], vec![0]),
                ],
                vec![
                    dirac_belief(vec![0], vec![0]),
                    dirac_belief(vec![0], vec![1]),
                ],
            ],
        )
        .unwrap();
        let d1 = refine(&[&s], 1).unwrap();
        assert_eq!(d1.num_classes(1), 1);
        assert_eq!(d1.num_classes(0), 2);
        let (p, m) = stable_partition(&[&s]).unwrap();
        assert_eq!(m, 2);
        assert_eq!(p.num_classes(1), 2);
        assert!(refine(&[&s], 4).unwrap().same_partition(&p));
    }

    #[test]
    fn explicit_terms_example1() {
        let (t, tc) = example1();
        let ann = explicit_hierarchy(&t, 0, 0, 1).unwrap();
        assert_eq!(ann.levels[0], first_order_term(&t, 0, 0));
        assert_eq!(ann.levels[0].len(), 3);
        let bob = explicit_hierarchy(&t, 1, 0, 2).unwrap();
        assert_eq!(
            bob.levels[0],
            Lps::single(Measure::dirac(Point::Base(vec![0])))
        );
        assert_eq!(
            bob.levels[1],
            Lps::single(Measure::dirac(Point::Extend(
                Box::new(Point::Base(vec![0])),
                vec![ann.levels[0].clone()]
            )))
        );
        assert_eq!(drop_last_order(&bob.levels[1]), bob.levels[0]);
        for (i, ty) in [(0, 0), (1, 0), (1, 1)] {
            assert_eq!(
                explicit_hierarchy(&tc, i, ty, 3).unwrap(),
                explicit_hierarchy(&t, i, 0, 3).unwrap()
            );
        }
        assert!(matches!(
            explicit_hierarchy(&t, 0, 0, 4),
            Err(Error::DepthTooLarge { .. })
        ));
    }

    #[test]
    fn identical_structures_pair_mirror_types() {
        let (_, tc) = example1();
        let (p, m) = stable_partition(&[&tc, &tc]).unwrap();
        assert_eq!(m, 1);
        for i in 0..2 {
            for u in 0..tc.num_types(i) {
                assert!(p.same_class(tag(Origin::First, i, u), tag(Origin::Second, i, u)));
            }
        }
        let eq = hierarchy_equivalent(&tc, &tc).unwrap();
        assert!(eq.holds());
        // Both Bob types share a class, so the first one is chosen.
        assert_eq!(eq.forward.unwrap().maps[1], vec![0, 0]);
    }

    #[test]
    fn check_morphism_rejects_bad_maps() {
        let (t, tc) = example1();
        assert!(check_morphism(
            &tc,
            &t,
            &Morphism {
                maps: vec![vec![0], vec![0, 0]]
            }
        )
        .is_ok());
        assert!(matches!(
            check_morphism(
                &tc,
                &t,
                &Morphism {
                    maps: vec![vec![0], vec![0, 1]]
                }
            ),
            Err(Error::InvalidMorphism(_))
        ));
        assert!(matches!(
            check_morphism(
                &tc,
                &t,
                &Morphism {
                    maps: vec![vec![0], vec![0]]
                }
            ),
            Err(Error::InvalidMorphism(_))
        ));
    }
}
