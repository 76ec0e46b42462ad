//! Line grammar for subgraph files.
//!
//! ```text
//! O<TAB>name<TAB>state,state[<TAB>[ingredient,ingredient]]
//! M<TAB>motion
//! //
//! ```
//!
//! `O` lines before the `M` line are inputs, those after it are outputs, and
//! `//` closes the unit. Blank lines and trailing whitespace are ignored.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::node::{FunctionalUnit, MotionLabel, ObjectNode};

#[derive(Default)]
struct PendingUnit {
    inputs: Vec<ObjectNode>,
    motion: Option<MotionLabel>,
    outputs: Vec<ObjectNode>,
    started: bool,
}

fn parse_object(line: usize, cols: &[&str]) -> Result<ObjectNode, ParseError> {
    if cols.len() > 4 {
        return Err(ParseError::line(line, "object line has more than three fields"));
    }
    let name = cols
        .get(1)
        .filter(|n| !n.trim().is_empty())
        .ok_or_else(|| ParseError::line(line, "object line without a name"))?;
    let states: Vec<&str> = cols.get(2).map(|s| s.split(',').collect()).unwrap_or_default();
    let ingredients = match cols.get(3) {
        None => Vec::new(),
        Some(field) => {
            let inner = field
                .trim()
                .strip_prefix('[')
                .and_then(|f| f.strip_suffix(']'))
                .ok_or_else(|| ParseError::line(line, "ingredient list must be enclosed in brackets"))?;
            inner.split(',').collect()
        }
    };
    ObjectNode::new(name, states, ingredients).map_err(|e| ParseError::line(line, e.to_string()))
}

/// Parses a whole subgraph file. Any malformed line rejects the file.
pub fn parse_subgraph(text: &str) -> Result<Vec<FunctionalUnit>, ParseError> {
    let mut units = Vec::new();
    let mut pending = PendingUnit::default();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_end();
        if trimmed.is_empty() {
            continue;
        }
        last_line = line;
        let cols: Vec<&str> = trimmed.split('\t').collect();
        match cols[0] {
            "O" => {
                let node = parse_object(line, &cols)?;
                pending.started = true;
                if pending.motion.is_none() {
                    pending.inputs.push(node);
                } else {
                    pending.outputs.push(node);
                }
            }
            "M" => {
                if pending.motion.is_some() {
                    return Err(ParseError::line(line, "second motion line in one unit"));
                }
                if cols.len() != 2 {
                    return Err(ParseError::line(line, "motion line must be M<TAB>label"));
                }
                let motion = MotionLabel::new(cols[1]).map_err(|e| ParseError::line(line, e.to_string()))?;
                pending.motion = Some(motion);
                pending.started = true;
            }
            "//" if cols.len() == 1 => {
                let done = std::mem::take(&mut pending);
                let motion = done
                    .motion
                    .ok_or_else(|| ParseError::line(line, "unit has no motion line"))?;
                if done.inputs.is_empty() {
                    return Err(ParseError::line(line, "unit has no input objects"));
                }
                if done.outputs.is_empty() {
                    return Err(ParseError::line(line, "unit has no output objects"));
                }
                units.push(
                    FunctionalUnit::new(done.inputs, motion, done.outputs)
                        .map_err(|e| ParseError::line(line, e.to_string()))?,
                );
            }
            tag => {
                return Err(ParseError::line(line, format!("unknown line tag {tag:?}")));
            }
        }
    }
    if pending.started {
        return Err(ParseError::line(last_line, "unit not terminated by //"));
    }
    Ok(units)
}

fn write_object(out: &mut String, node: &ObjectNode) {
    let states: Vec<&str> = node.states().iter().map(String::as_str).collect();
    let _ = write!(out, "O\t{}", node.name());
    if !states.is_empty() || !node.ingredients().is_empty() {
        let _ = write!(out, "\t{}", states.join(","));
    }
    if !node.ingredients().is_empty() {
        let _ = write!(out, "\t[{}]", node.ingredients().join(","));
    }
    out.push('\n');
}

/// Writes units in the grammar accepted by [`parse_subgraph`].
pub fn serialize_subgraph(units: &[FunctionalUnit]) -> String {
    let mut out = String::new();
    for unit in units {
        for node in unit.inputs() {
            write_object(&mut out, node);
        }
        let _ = writeln!(out, "M\t{}", unit.motion());
        for node in unit.outputs() {
            write_object(&mut out, node);
        }
        out.push_str("//\n");
    }
    out
}
