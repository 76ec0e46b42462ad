use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::RetrievalError;
use crate::node::FunctionalUnit;

/// For each unit, the positions of the other units it needs to run after:
/// those that create one of its inputs.
fn prerequisites(units: &[FunctionalUnit]) -> Vec<Vec<usize>> {
    units
        .iter()
        .enumerate()
        .map(|(j, consumer)| {
            (0..units.len())
                .filter(|&i| i != j && consumer.input_keys().any(|k| units[i].creates(k)))
                .collect()
        })
        .collect()
}

/// Turns goal-first discovery order into execution order.
///
/// Plain reversal is kept when it already puts every creator before its
/// consumers. Otherwise (shared subgoals discovered late) the units are
/// topologically sorted, breaking ties by reversed position.
pub fn reverse_to_execution_order(
    discovered: &[FunctionalUnit],
) -> Result<Vec<FunctionalUnit>, RetrievalError> {
    let reversed: Vec<FunctionalUnit> = discovered.iter().rev().cloned().collect();
    let needs = prerequisites(&reversed);
    if needs
        .iter()
        .enumerate()
        .all(|(j, pre)| pre.iter().all(|&i| i < j))
    {
        return Ok(reversed);
    }

    let n = reversed.len();
    let mut waiting: Vec<usize> = needs.iter().map(Vec::len).collect();
    let mut unlocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, pre) in needs.iter().enumerate() {
        for &i in pre {
            unlocks[i].push(j);
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&j| waiting[j] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(i)) = ready.pop() {
        order.push(i);
        for &j in &unlocks[i] {
            waiting[j] -= 1;
            if waiting[j] == 0 {
                ready.push(Reverse(j));
            }
        }
    }
    if order.len() != n {
        return Err(RetrievalError::CyclicDependency);
    }
    Ok(order.into_iter().map(|i| reversed[i].clone()).collect())
}
