//! Greedy best-first retrieval.
//!
//! Objects still to be produced wait in a FIFO queue. Each one is resolved
//! by committing to the best-scoring candidate unit; choices are never
//! revisited.

use std::collections::{HashSet, VecDeque};

use crate::error::RetrievalError;
use crate::graph::{Foon, KitchenState};
use crate::node::FunctionalUnit;
use crate::parser::MotionSuccessTable;
use crate::retrieval::heuristic::{best_rate_position, fewest_inputs_position};
use crate::retrieval::{
    build, creating_candidates, is_available, Algorithm, Expansion, Retrieval, RetrievalStats,
    SubstitutionMap,
};

#[derive(Debug, Clone, Copy)]
pub enum Heuristic<'a> {
    /// Highest motion success rate.
    MotionSuccess(&'a MotionSuccessTable),
    /// Fewest input objects.
    InputCount,
}

impl Heuristic<'_> {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Heuristic::MotionSuccess(_) => Algorithm::GbfsH1,
            Heuristic::InputCount => Algorithm::GbfsH2,
        }
    }

    fn pick(&self, candidates: &[&FunctionalUnit]) -> usize {
        let pos = match self {
            Heuristic::MotionSuccess(table) => best_rate_position(candidates, table),
            Heuristic::InputCount => fewest_inputs_position(candidates),
        };
        pos.expect("candidate list is nonempty")
    }
}

pub fn gbfs_retrieve(
    foon: &Foon,
    goal_key: &str,
    kitchen: &KitchenState,
    subs: &SubstitutionMap,
    heuristic: Heuristic<'_>,
) -> Result<Retrieval, RetrievalError> {
    let available = |key: &str| is_available(key, kitchen, subs).is_available();

    let mut queue: VecDeque<String> = VecDeque::from([goal_key.to_string()]);
    let mut enqueued: HashSet<String> = HashSet::from([goal_key.to_string()]);
    let mut created: HashSet<String> = HashSet::new();
    let mut chosen_set: HashSet<usize> = HashSet::new();
    let mut discovered: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut scored = 0;

    while let Some(key) = queue.pop_front() {
        if available(&key) || created.contains(&key) {
            continue;
        }
        let candidates = creating_candidates(foon, &key);
        if candidates.is_empty() {
            return Err(if key == goal_key {
                RetrievalError::GoalNotFound(key)
            } else {
                RetrievalError::UnreachableGoal(key)
            });
        }
        scored += candidates.len();
        let units: Vec<&FunctionalUnit> = candidates.iter().map(|&i| foon.unit(i)).collect();
        let chosen = candidates[heuristic.pick(&units)];
        trace.push(Expansion {
            key,
            candidates,
            chosen,
        });

        let unit = foon.unit(chosen);
        if chosen_set.insert(chosen) {
            discovered.push(chosen);
            created.extend(
                unit.output_keys()
                    .filter(|k| unit.creates(k))
                    .map(str::to_string),
            );
        }
        for input in unit.input_keys() {
            if enqueued.contains(input) || created.contains(input) || available(input) {
                continue;
            }
            enqueued.insert(input.to_string());
            queue.push_back(input.to_string());
        }
    }

    let tree = build(foon, &discovered, goal_key, heuristic.algorithm())?;
    let stats = RetrievalStats {
        units_in_tree: tree.len(),
        units_expanded: scored,
        max_depth_reached: 0,
    };
    Ok(Retrieval { tree, stats, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::ObjectNode;
    use crate::parser::{parse_motions, parse_subgraph};

    fn kitchen(keys: &[&str]) -> KitchenState {
        let nodes: Vec<ObjectNode> = keys.iter().map(|k| ObjectNode::from_key(k).unwrap()).collect();
        nodes.iter().collect()
    }

    fn foon(text: &str) -> Foon {
        Foon::from_units(parse_subgraph(text).unwrap())
    }

    fn table() -> MotionSuccessTable {
        parse_motions("mix 0.90\nstir 0.80\nchop 0.10\n").unwrap()
    }

    fn motions(r: &Retrieval) -> Vec<&str> {
        r.tree.steps.iter().map(|u| u.motion().as_str()).collect()
    }

    #[test]
    fn goal_in_kitchen_is_empty_tree() {
        let f = foon("O\ta\nM\tmix\nO\tg\n//\n");
        let t = table();
        let r = gbfs_retrieve(&f, "g||", &kitchen(&["g||"]), &SubstitutionMap::new(), Heuristic::MotionSuccess(&t)).unwrap();
        assert!(r.tree.is_empty());
        assert_eq!(r.stats.units_expanded, 0);
    }

    #[test]
    fn h1_prefers_mix() {
        let f = foon("O\tcream\nM\tstir\nO\twhipped\n//\nO\tcream\nM\tmix\nO\twhipped\n//\n");
        let t = table();
        let r = gbfs_retrieve(&f, "whipped||", &kitchen(&["cream||"]), &SubstitutionMap::new(), Heuristic::MotionSuccess(&t)).unwrap();
        assert_eq!(motions(&r), ["mix"]);
        assert_eq!(r.tree.algorithm, Algorithm::GbfsH1);
        assert_eq!(r.stats.units_expanded, 2);
    }

    #[test]
    fn h2_prefers_fewer_inputs() {
        let f = foon(
            "O\tegg\nO\toil\nO\tcheese\nO\tonion\nM\tstir\nO\tscrambled egg\n//\n\
             O\tegg\nO\toil\nO\tsalt\nM\tstir\nO\tscrambled egg\n//\n",
        );
        let k = kitchen(&["egg||", "oil||", "cheese||", "onion||", "salt||"]);
        let r = gbfs_retrieve(&f, "scrambled egg||", &k, &SubstitutionMap::new(), Heuristic::InputCount).unwrap();
        assert_eq!(r.tree.steps[0].inputs().len(), 3);
    }

    #[test]
    fn greedy_choice_is_not_revised() {
        // mix rates higher but needs something nobody makes
        let f = foon("O\tk\nM\tstir\nO\tg\n//\nO\tghost\nM\tmix\nO\tg\n//\n");
        let t = table();
        let err = gbfs_retrieve(&f, "g||", &kitchen(&["k||"]), &SubstitutionMap::new(), Heuristic::MotionSuccess(&t)).unwrap_err();
        assert_eq!(err, RetrievalError::UnreachableGoal("ghost||".into()));
    }

    #[test]
    fn goal_not_found() {
        let f = foon("O\ta\nM\tmix\nO\tb\n//\n");
        let err = gbfs_retrieve(&f, "zzz||", &kitchen(&[]), &SubstitutionMap::new(), Heuristic::InputCount).unwrap_err();
        assert_eq!(err, RetrievalError::GoalNotFound("zzz||".into()));
    }

    #[test]
    fn shared_subgoal_expanded_once() {
        let f = foon(
            "O\tx\nO\ty\nM\ttop\nO\tg\n//\n\
             O\ts\nM\tmx\nO\tx\n//\n\
             O\ts\nM\tmy\nO\ty\n//\n\
             O\tk\nM\tms\nO\ts\n//\n",
        );
        let r = gbfs_retrieve(&f, "g||", &kitchen(&["k||"]), &SubstitutionMap::new(), Heuristic::InputCount).unwrap();
        assert_eq!(motions(&r), ["ms", "my", "mx", "top"]);
        let keys: Vec<&str> = r.trace.iter().map(|e| e.key.as_str()).collect();
        assert_eq!(keys, ["g||", "x||", "y||", "s||"]);
    }

    #[test]
    fn unbroken_cycle_is_reported() {
        let f = foon("O\tcream\tliquid\nM\tpour\nO\tcream\tpoured\n//\nO\tcream\tpoured\nM\tpour\nO\tcream\tliquid\n//\n");
        let err = gbfs_retrieve(&f, "cream|poured|", &kitchen(&[]), &SubstitutionMap::new(), Heuristic::InputCount).unwrap_err();
        assert_eq!(err, RetrievalError::CyclicDependency);
    }

    #[test]
    fn multi_output_unit_satisfies_sibling() {
        let f = foon(
            "O\tyolk\nO\twhite\nM\tmix\nO\tg\n//\n\
             O\tegg\nM\tseparate\nO\tyolk\nO\twhite\n//\n",
        );
        let r = gbfs_retrieve(&f, "g||", &kitchen(&["egg||"]), &SubstitutionMap::new(), Heuristic::InputCount).unwrap();
        assert_eq!(motions(&r), ["separate", "mix"]);
        assert_eq!(r.trace.len(), 2);
    }
}
