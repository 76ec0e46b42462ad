use log::warn;

use crate::node::FunctionalUnit;
use crate::parser::MotionSuccessTable;

pub(crate) fn motion_rate(unit: &FunctionalUnit, table: &MotionSuccessTable) -> f64 {
    match table.get(unit.motion().as_str()) {
        Some(rate) => rate,
        None => {
            warn!("motion {:?} has no success rate; scoring it 0.0", unit.motion().as_str());
            0.0
        }
    }
}

/// Position of the highest-rated motion; earliest wins ties.
pub(crate) fn best_rate_position(candidates: &[&FunctionalUnit], table: &MotionSuccessTable) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (pos, unit) in candidates.iter().enumerate() {
        let rate = motion_rate(unit, table);
        if best.is_none_or(|(_, r)| rate > r) {
            best = Some((pos, rate));
        }
    }
    best.map(|(pos, _)| pos)
}

/// Position of the unit with the fewest input nodes; earliest wins ties.
pub(crate) fn fewest_inputs_position(candidates: &[&FunctionalUnit]) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (pos, unit) in candidates.iter().enumerate() {
        let n = unit.inputs().len();
        if best.is_none_or(|(_, m)| n < m) {
            best = Some((pos, n));
        }
    }
    best.map(|(pos, _)| pos)
}

/// Candidate whose motion has the highest success rate. Motions missing
/// from the table score 0.0. `None` only for an empty slice.
pub fn select_best_h1<'a>(
    candidates: &[&'a FunctionalUnit],
    table: &MotionSuccessTable,
) -> Option<&'a FunctionalUnit> {
    best_rate_position(candidates, table).map(|p| candidates[p])
}

/// Candidate with the fewest input objects. `None` only for an empty slice.
pub fn select_best_h2<'a>(candidates: &[&'a FunctionalUnit]) -> Option<&'a FunctionalUnit> {
    fewest_inputs_position(candidates).map(|p| candidates[p])
}
