use crate::graph::KitchenState;
use crate::retrieval::SubstitutionMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Availability {
    Direct,
    /// The first equivalent, in map order, that the kitchen holds.
    ViaSubstitute(String),
    Unavailable,
}

impl Availability {
    pub fn is_available(&self) -> bool {
        !matches!(self, Availability::Unavailable)
    }
}

pub fn is_available(key: &str, kitchen: &KitchenState, subs: &SubstitutionMap) -> Availability {
    if kitchen.contains(key) {
        return Availability::Direct;
    }
    subs.equivalents(key)
        .iter()
        .find(|e| kitchen.contains(e))
        .map(|e| Availability::ViaSubstitute(e.clone()))
        .unwrap_or(Availability::Unavailable)
}
