//! Iterative deepening over functional-unit layers.
//!
//! The unit producing the goal sits at depth 1. Each pass is a depth-first
//! search bounded by the current limit that always commits to the first
//! candidate of every object it has to produce.

use std::collections::HashSet;

use crate::error::RetrievalError;
use crate::graph::{Foon, KitchenState};
use crate::retrieval::{
    build, creating_candidates, is_available, Algorithm, Expansion, Retrieval, RetrievalStats,
    SubstitutionMap, TaskTree,
};

pub const DEFAULT_DEPTH_CEILING: usize = 100;

enum Failure {
    Cutoff,
    Cycle,
    Unreachable(String),
}

struct Pass<'a> {
    foon: &'a Foon,
    kitchen: &'a KitchenState,
    subs: &'a SubstitutionMap,
    path: Vec<String>,
    discovered: Vec<usize>,
    seen: HashSet<usize>,
    trace: Vec<Expansion>,
    entered: usize,
}

impl<'a> Pass<'a> {
    fn new(foon: &'a Foon, kitchen: &'a KitchenState, subs: &'a SubstitutionMap) -> Self {
        Pass {
            foon,
            kitchen,
            subs,
            path: Vec::new(),
            discovered: Vec::new(),
            seen: HashSet::new(),
            trace: Vec::new(),
            entered: 0,
        }
    }

    /// Depth of the subtree rooted at `key`, which must not be available.
    fn produce(&mut self, key: &str, limit: usize) -> Result<usize, Failure> {
        if limit == 0 {
            return Err(Failure::Cutoff);
        }
        if self.path.iter().any(|p| p == key) {
            return Err(Failure::Cycle);
        }
        let candidates = creating_candidates(self.foon, key);
        let Some(&chosen) = candidates.first() else {
            return Err(Failure::Unreachable(key.to_string()));
        };
        self.entered += 1;
        self.trace.push(Expansion {
            key: key.to_string(),
            candidates: candidates.clone(),
            chosen,
        });
        if self.seen.insert(chosen) {
            self.discovered.push(chosen);
        }

        let unit = self.foon.unit(chosen);
        let needed: Vec<String> = unit
            .input_keys()
            .filter(|k| !is_available(k, self.kitchen, self.subs).is_available())
            .map(str::to_string)
            .collect();
        self.path.push(key.to_string());
        let mut deepest = 0;
        let mut outcome = Ok(());
        for input in &needed {
            match self.produce(input, limit - 1) {
                Ok(d) => deepest = deepest.max(d),
                Err(f) => {
                    outcome = Err(f);
                    break;
                }
            }
        }
        self.path.pop();
        outcome.map(|()| deepest + 1)
    }
}

/// Iterative deepening retrieval with limits 1, 2, ..., `depth_ceiling`.
pub fn ids_retrieve(
    foon: &Foon,
    goal_key: &str,
    kitchen: &KitchenState,
    subs: &SubstitutionMap,
    depth_ceiling: usize,
) -> Result<Retrieval, RetrievalError> {
    if depth_ceiling == 0 {
        return Err(RetrievalError::InvalidDepthCeiling);
    }
    if is_available(goal_key, kitchen, subs).is_available() {
        return Ok(Retrieval {
            tree: TaskTree {
                steps: Vec::new(),
                goal: goal_key.to_string(),
                algorithm: Algorithm::Ids,
            },
            stats: RetrievalStats::default(),
            trace: Vec::new(),
        });
    }
    if creating_candidates(foon, goal_key).is_empty() {
        return Err(RetrievalError::GoalNotFound(goal_key.to_string()));
    }

    let mut entered = 0;
    for limit in 1..=depth_ceiling {
        let mut pass = Pass::new(foon, kitchen, subs);
        let outcome = pass.produce(goal_key, limit);
        entered += pass.entered;
        match outcome {
            Ok(_) => {
                let tree = build(foon, &pass.discovered, goal_key, Algorithm::Ids)?;
                let stats = RetrievalStats {
                    units_in_tree: tree.len(),
                    units_expanded: entered,
                    max_depth_reached: limit,
                };
                return Ok(Retrieval {
                    tree,
                    stats,
                    trace: pass.trace,
                });
            }
            Err(Failure::Cutoff) => continue,
            Err(Failure::Unreachable(key)) => return Err(RetrievalError::UnreachableGoal(key)),
            // the first-candidate chain loops back on itself; deeper passes
            // follow the same chain
            Err(Failure::Cycle) => break,
        }
    }
    Err(RetrievalError::NoSolutionWithinDepth(depth_ceiling))
}
