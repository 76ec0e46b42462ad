//! The universal FOON: deduplicated units plus a producer index.

use std::collections::{BTreeSet, HashMap};

use crate::node::{CanonicalForm, FunctionalUnit, ObjectNode};

/// Deduplicated functional units in insertion order, indexed by the object
/// keys each unit outputs.
#[derive(Debug, Clone, Default)]
pub struct Foon {
    units: Vec<FunctionalUnit>,
    identity: HashMap<CanonicalForm, usize>,
    producers: HashMap<String, Vec<usize>>,
}

impl Foon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_units<I: IntoIterator<Item = FunctionalUnit>>(units: I) -> Self {
        let mut foon = Foon::new();
        for unit in units {
            foon.add_unit(unit);
        }
        foon
    }

    /// Appends `unit` unless an identical unit is already stored.
    /// Returns whether it was inserted.
    pub fn add_unit(&mut self, unit: FunctionalUnit) -> bool {
        let canonical = unit.canonical();
        if self.identity.contains_key(&canonical) {
            return false;
        }
        let index = self.units.len();
        for key in unit.output_keys() {
            let slot = self.producers.entry(key.to_string()).or_default();
            // an output listed twice in one unit is indexed once
            if slot.last() != Some(&index) {
                slot.push(index);
            }
        }
        self.identity.insert(canonical, index);
        self.units.push(unit);
        true
    }

    /// Units whose outputs include `key`, in insertion order.
    pub fn candidate_units(&self, key: &str) -> Vec<&FunctionalUnit> {
        self.candidate_indices(key)
            .iter()
            .map(|&i| &self.units[i])
            .collect()
    }

    pub fn candidate_indices(&self, key: &str) -> &[usize] {
        self.producers.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Union of both graphs. `self`'s units keep their positions; units new
    /// to `self` follow in `other`'s order.
    pub fn merge(&self, other: &Foon) -> Foon {
        let mut merged = self.clone();
        for unit in &other.units {
            merged.add_unit(unit.clone());
        }
        merged
    }

    pub fn units(&self) -> &[FunctionalUnit] {
        &self.units
    }

    pub fn unit(&self, index: usize) -> &FunctionalUnit {
        &self.units[index]
    }

    pub fn index_of(&self, unit: &FunctionalUnit) -> Option<usize> {
        self.identity.get(&unit.canonical()).copied()
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// Every distinct object key named `name` that appears anywhere in the
    /// graph, sorted.
    pub fn keys_named(&self, name: &str) -> Vec<String> {
        let name = name.trim().to_lowercase();
        let found: BTreeSet<&str> = self
            .units
            .iter()
            .flat_map(|u| u.inputs().iter().chain(u.outputs()))
            .filter(|n| n.name() == name)
            .map(ObjectNode::key)
            .collect();
        found.into_iter().map(str::to_string).collect()
    }
}

impl PartialEq for Foon {
    fn eq(&self, other: &Self) -> bool {
        self.units == other.units
    }
}

impl Eq for Foon {}

/// Object keys available in the environment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KitchenState {
    items: BTreeSet<String>,
}

impl KitchenState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, node: &ObjectNode) -> bool {
        self.items.insert(node.key().to_string())
    }

    pub fn contains(&self, key: &str) -> bool {
        self.items.contains(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl<'a> FromIterator<&'a ObjectNode> for KitchenState {
    fn from_iter<T: IntoIterator<Item = &'a ObjectNode>>(iter: T) -> Self {
        let mut kitchen = KitchenState::new();
        for node in iter {
            kitchen.insert(node);
        }
        kitchen
    }
}
