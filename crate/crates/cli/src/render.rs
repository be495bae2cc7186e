//! Name lookups for reports. Sets are always listed in declaration order.

use std::collections::BTreeSet;

use lextype_core::{Event, Player, Strategy, TypeId, TypeStructure};

pub struct Names<'a> {
    structure: &'a TypeStructure,
}

impl<'a> Names<'a> {
    pub fn new(structure: &'a TypeStructure) -> Names<'a> {
        Names { structure }
    }

    pub fn player(&self, i: Player) -> &'a str {
        self.structure.game().player_name(i)
    }

    pub fn strategy(&self, i: Player, s: Strategy) -> &'a str {
        self.structure.game().strategy_name(i, s)
    }

    pub fn type_name(&self, i: Player, t: TypeId) -> &'a str {
        self.structure.type_name(i, t)
    }

    /// `{x, y}` over strategy indices, which sort in declaration order.
    pub fn strategies(&self, i: Player, set: &BTreeSet<Strategy>) -> String {
        let names: Vec<&str> = set.iter().map(|&s| self.strategy(i, s)).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn pairs(&self, e: &Event) -> String {
        let names: Vec<String> = e
            .pairs
            .iter()
            .map(|&(s, t)| {
                format!(
                    "({}, {})",
                    self.strategy(e.player, s),
                    self.type_name(e.player, t)
                )
            })
            .collect();
        format!("{{{}}}", names.join(", "))
    }
}
