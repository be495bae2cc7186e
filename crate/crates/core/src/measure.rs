//! Finitely supported probability measures and lexicographic probability
//! systems over an arbitrary ordered ground set.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A probability measure with finite support. Zero masses are never stored,
/// so structural equality is equality of measures.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure<K: Ord> {
    mass: BTreeMap<K, Rational>,
}

impl<K: Ord> Measure<K> {
    /// Checks nonnegativity and that masses sum to exactly one. Repeated keys
    /// are summed.
    pub fn new(entries: impl IntoIterator<Item = (K, Rational)>) -> Result<Measure<K>> {
        let mut mass: BTreeMap<K, Rational> = BTreeMap::new();
        for (k, p) in entries {
            if p.is_negative() {
                return Err(Error::NonProbability {
                    path: String::new(),
                    reason: format!("negative mass {p}"),
                });
            }
            *mass.entry(k).or_insert_with(Rational::zero) += &p;
        }
        mass.retain(|_, p| !p.is_zero());
        let total: Rational = mass.values().sum();
        if !total.is_one() {
            return Err(Error::non_probability("", &total));
        }
        Ok(Measure { mass })
    }

    pub fn dirac(k: K) -> Measure<K> {
        Measure {
            mass: BTreeMap::from([(k, Rational::one())]),
        }
    }

    pub fn mass_of(&self, k: &K) -> Rational {
        self.mass.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Mass of the set of ground elements satisfying `pred`.
    pub fn mass_where(&self, mut pred: impl FnMut(&K) -> bool) -> Rational {
        self.mass
            .iter()
            .filter(|(k, _)| pred(k))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.mass.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.mass.iter()
    }

    pub fn total(&self) -> Rational {
        self.mass.values().sum()
    }

    /// Image measure μ ∘ f⁻¹.
    pub fn pushforward<L: Ord>(&self, mut f: impl FnMut(&K) -> L) -> Measure<L> {
        let mut mass: BTreeMap<L, Rational> = BTreeMap::new();
        for (k, p) in &self.mass {
            *mass.entry(f(k)).or_insert_with(Rational::zero) += p;
        }
        Measure { mass }
    }
}

/// A lexicographic probability system: a nonempty sequence of measures over a
/// common ground set, earlier levels taking priority.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lps<K: Ord> {
    levels: Vec<Measure<K>>,
}

impl<K: Ord> Lps<K> {
    pub fn new(levels: Vec<Measure<K>>) -> Result<Lps<K>> {
        if levels.is_empty() {
            return Err(Error::EmptyLps {
                path: String::new(),
            });
        }
        Ok(Lps { levels })
    }

    pub fn single(level: Measure<K>) -> Lps<K> {
        Lps {
            levels: vec![level],
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn levels(&self) -> &[Measure<K>] {
        &self.levels
    }

    pub fn level(&self, l: usize) -> &Measure<K> {
        &self.levels[l]
    }

    /// Image LPS: pushes every level forward along the same map.
    pub fn pushforward<L: Ord>(&self, mut f: impl FnMut(&K) -> L) -> Lps<L> {
        Lps {
            levels: self.levels.iter().map(|m| m.pushforward(&mut f)).collect(),
        }
    }

    /// Union of the level supports.
    pub fn support(&self) -> BTreeSet<&K> {
        self.levels.iter().flat_map(Measure::support).collect()
    }
}
