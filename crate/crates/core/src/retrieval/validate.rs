//! Executes a task tree step by step against the kitchen.
//!
//! Shares nothing with the searches: no producer index, no availability
//! helper, no ordering code.

use std::collections::HashSet;

use crate::graph::KitchenState;
use crate::retrieval::{SubstitutionMap, TaskTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// `step == tree.len()` means every step fired but the goal never appeared.
    Invalid { step: usize, missing: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

pub fn validate_tree(tree: &TaskTree, kitchen: &KitchenState, subs: &SubstitutionMap) -> Verdict {
    let mut have: HashSet<String> = kitchen.keys().map(str::to_string).collect();
    let holds = |have: &HashSet<String>, key: &str| {
        have.contains(key) || subs.equivalents(key).iter().any(|e| have.contains(e))
    };
    for (step, unit) in tree.steps.iter().enumerate() {
        for input in unit.inputs() {
            if !holds(&have, input.key()) {
                return Verdict::Invalid {
                    step,
                    missing: input.key().to_string(),
                };
            }
        }
        have.extend(unit.outputs().iter().map(|o| o.key().to_string()));
    }
    if holds(&have, &tree.goal) {
        Verdict::Valid
    } else {
        Verdict::Invalid {
            step: tree.steps.len(),
            missing: tree.goal.clone(),
        }
    }
}
