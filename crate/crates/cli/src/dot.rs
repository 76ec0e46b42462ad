//! Graphviz rendering of a task tree.
//!
//! Objects are ellipses and motions are boxes. Each distinct object key gets
//! one node, so an object produced by one step and consumed by the next is
//! drawn once.

use std::collections::HashMap;
use std::fmt::Write as _;

use foon_core::{ObjectNode, TaskTree};

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn object_id<'t>(out: &mut String, node: &'t ObjectNode, objects: &mut HashMap<&'t str, String>) -> String {
    if let Some(id) = objects.get(node.key()) {
        return id.clone();
    }
    let id = format!("o{}", objects.len());
    let _ = writeln!(out, "  {id} [shape=ellipse, label={}];", quote(&node.to_string()));
    objects.insert(node.key(), id.clone());
    id
}

/// Renders `tree` as a bipartite digraph: input -> motion -> output.
pub fn export_dot(tree: &TaskTree) -> String {
    let mut out = String::new();
    let mut objects: HashMap<&str, String> = HashMap::new();
    let _ = writeln!(out, "digraph task_tree {{");
    let _ = writeln!(out, "  label={};", quote(&format!("{} ({})", tree.goal, tree.algorithm)));

    for (step, unit) in tree.steps.iter().enumerate() {
        let mut ids = Vec::with_capacity(unit.inputs().len() + unit.outputs().len());
        for node in unit.inputs().iter().chain(unit.outputs()) {
            ids.push(object_id(&mut out, node, &mut objects));
        }
        let motion = format!("m{step}");
        let _ = writeln!(out, "  {motion} [shape=box, label={}];", quote(unit.motion().as_str()));
        let (inputs, outputs) = ids.split_at(unit.inputs().len());
        for id in inputs {
            let _ = writeln!(out, "  {id} -> {motion};");
        }
        for id in outputs {
            let _ = writeln!(out, "  {motion} -> {id};");
        }
    }
    out.push_str("}\n");
    out
}
