//! Task-tree retrieval from a universal FOON.
//!
//! Searches run backwards from the goal object. Whatever a search selects is
//! collected goal-first and then put into execution order, so a task tree can
//! be executed front to back starting from the kitchen.

use std::fmt;
use std::str::FromStr;

use crate::error::RetrievalError;
use crate::graph::{Foon, KitchenState};
use crate::node::FunctionalUnit;

mod availability;
mod gbfs;
mod heuristic;
mod ids;
mod order;
mod substitution;
mod validate;

pub use availability::{is_available, Availability};
pub use gbfs::{gbfs_retrieve, Heuristic};
pub use heuristic::{select_best_h1, select_best_h2};
pub use ids::{ids_retrieve, DEFAULT_DEPTH_CEILING};
pub use order::reverse_to_execution_order;
pub use substitution::SubstitutionMap;
pub use validate::{validate_tree, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ids,
    GbfsH1,
    GbfsH2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ids, Algorithm::GbfsH1, Algorithm::GbfsH2];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Ids => "ids",
            Algorithm::GbfsH1 => "gbfs-h1",
            Algorithm::GbfsH2 => "gbfs-h2",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?} (expected ids, gbfs-h1 or gbfs-h2)"))
    }
}

/// Units in execution order: kitchen first, goal last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskTree {
    pub steps: Vec<FunctionalUnit>,
    pub goal: String,
    pub algorithm: Algorithm,
}

impl TaskTree {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RetrievalStats {
    pub units_in_tree: usize,
    /// Candidate units scored (gbfs) or units entered across every
    /// depth-limited pass (ids).
    pub units_expanded: usize,
    /// Depth limit of the successful pass; always 0 for gbfs.
    pub max_depth_reached: usize,
}

/// One decision point: the key being satisfied, the candidates that were
/// on offer (unit indices into the graph) and the one taken.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub key: String,
    pub candidates: Vec<usize>,
    pub chosen: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retrieval {
    pub tree: TaskTree,
    pub stats: RetrievalStats,
    pub trace: Vec<Expansion>,
}

/// Units producing the goal, in graph order.
pub fn find_goal<'a>(
    foon: &'a Foon,
    goal_key: &str,
    kitchen: &KitchenState,
) -> Result<Vec<&'a FunctionalUnit>, RetrievalError> {
    let found = foon.candidate_units(goal_key);
    if found.is_empty() && !kitchen.contains(goal_key) {
        return Err(RetrievalError::GoalNotFound(goal_key.to_string()));
    }
    Ok(found)
}

/// Resolves a bare object name to the single key carrying that name in the
/// graph or the kitchen.
pub fn resolve_goal_by_name(
    foon: &Foon,
    kitchen: &KitchenState,
    name: &str,
) -> Result<String, RetrievalError> {
    let wanted = name.trim().to_lowercase();
    let mut matches = foon.keys_named(&wanted);
    for key in kitchen.keys() {
        if key.split('|').next() == Some(wanted.as_str()) && !matches.iter().any(|m| m == key) {
            matches.push(key.to_string());
        }
    }
    matches.sort();
    match matches.len() {
        0 => Err(RetrievalError::GoalNotFound(wanted)),
        1 => Ok(matches.remove(0)),
        _ => Err(RetrievalError::AmbiguousGoal {
            name: wanted,
            matches,
        }),
    }
}

/// Candidates that can actually yield `key`: producers that do not also
/// need `key` as an input.
pub(crate) fn creating_candidates(foon: &Foon, key: &str) -> Vec<usize> {
    foon.candidate_indices(key)
        .iter()
        .copied()
        .filter(|&i| !foon.unit(i).consumes(key))
        .collect()
}

pub(crate) fn build(
    foon: &Foon,
    discovered: &[usize],
    goal: &str,
    algorithm: Algorithm,
) -> Result<TaskTree, RetrievalError> {
    let units: Vec<FunctionalUnit> = discovered.iter().map(|&i| foon.unit(i).clone()).collect();
    Ok(TaskTree {
        steps: reverse_to_execution_order(&units)?,
        goal: goal.to_string(),
        algorithm,
    })
}
