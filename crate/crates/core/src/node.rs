//! Object nodes, motion labels and functional units.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::NodeError;

const RESERVED: &[char] = &['|', ',', '[', ']', '\t', '\n', '\r'];

fn clean(field: &'static str, raw: &str) -> Result<String, NodeError> {
    let value = raw.trim().to_lowercase();
    if value.contains(RESERVED) {
        return Err(NodeError::ReservedChar { field, value });
    }
    Ok(value)
}

/// An object together with its state labels and, for containers, the
/// ingredients it holds.
///
/// Labels are trimmed and lowercased on construction. Equality and hashing
/// go through [`object_key`], so state order and name case never matter.
#[derive(Debug, Clone)]
pub struct ObjectNode {
    name: String,
    states: BTreeSet<String>,
    ingredients: Vec<String>,
    key: String,
}

impl ObjectNode {
    pub fn new<S, I>(name: &str, states: S, ingredients: I) -> Result<Self, NodeError>
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
        I: IntoIterator,
        I::Item: AsRef<str>,
    {
        let name = clean("name", name)?;
        if name.is_empty() {
            return Err(NodeError::EmptyName);
        }
        let mut state_set = BTreeSet::new();
        for s in states {
            let s = clean("state", s.as_ref())?;
            if !s.is_empty() {
                state_set.insert(s);
            }
        }
        let mut ingredient_list = Vec::new();
        for i in ingredients {
            let i = clean("ingredient", i.as_ref())?;
            if !i.is_empty() {
                ingredient_list.push(i);
            }
        }
        let key = build_key(&name, &state_set, &ingredient_list);
        Ok(ObjectNode {
            name,
            states: state_set,
            ingredients: ingredient_list,
            key,
        })
    }

    /// Object with states and no ingredients.
    pub fn with_states<S>(name: &str, states: S) -> Result<Self, NodeError>
    where
        S: IntoIterator,
        S::Item: AsRef<str>,
    {
        Self::new(name, states, std::iter::empty::<&str>())
    }

    /// Parses a `name|states|ingredients` key back into a node.
    ///
    /// The input need not be canonical: case, spacing and state order are
    /// normalized, so `from_key(k).key()` is the canonical spelling of `k`.
    pub fn from_key(key: &str) -> Result<Self, NodeError> {
        let mut parts = key.split('|');
        let (Some(name), Some(states), Some(ingredients), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(NodeError::BadKey(key.to_string()));
        };
        Self::new(name, states.split(','), ingredients.split(','))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &BTreeSet<String> {
        &self.states
    }

    pub fn ingredients(&self) -> &[String] {
        &self.ingredients
    }

    pub fn key(&self) -> &str {
        &self.key
    }
}

fn build_key(name: &str, states: &BTreeSet<String>, ingredients: &[String]) -> String {
    let mut sorted: Vec<&str> = ingredients.iter().map(String::as_str).collect();
    sorted.sort_unstable();
    let states: Vec<&str> = states.iter().map(String::as_str).collect();
    format!("{}|{}|{}", name, states.join(","), sorted.join(","))
}

/// Canonical identity of an object: `name|sorted states|sorted ingredients`.
pub fn object_key(node: &ObjectNode) -> &str {
    node.key()
}

impl PartialEq for ObjectNode {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for ObjectNode {}

impl Hash for ObjectNode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl fmt::Display for ObjectNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.states.is_empty() {
            let states: Vec<&str> = self.states.iter().map(String::as_str).collect();
            write!(f, " ({})", states.join(", "))?;
        }
        if !self.ingredients.is_empty() {
            write!(f, " [{}]", self.ingredients.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotionLabel(String);

impl MotionLabel {
    pub fn new(label: &str) -> Result<Self, NodeError> {
        let label = clean("motion", label)?;
        if label.is_empty() {
            return Err(NodeError::EmptyMotion);
        }
        Ok(MotionLabel(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MotionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Identity of a functional unit: sorted input keys, motion, sorted output keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub inputs: Vec<String>,
    pub motion: String,
    pub outputs: Vec<String>,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -{}-> {}",
            self.inputs.join(";"),
            self.motion,
            self.outputs.join(";")
        )
    }
}

/// One manipulation: input objects, a motion, output objects.
#[derive(Debug, Clone)]
pub struct FunctionalUnit {
    inputs: Vec<ObjectNode>,
    motion: MotionLabel,
    outputs: Vec<ObjectNode>,
}

impl FunctionalUnit {
    pub fn new(
        inputs: Vec<ObjectNode>,
        motion: MotionLabel,
        outputs: Vec<ObjectNode>,
    ) -> Result<Self, NodeError> {
        if inputs.is_empty() {
            return Err(NodeError::NoInputs);
        }
        if outputs.is_empty() {
            return Err(NodeError::NoOutputs);
        }
        Ok(FunctionalUnit {
            inputs,
            motion,
            outputs,
        })
    }

    pub fn inputs(&self) -> &[ObjectNode] {
        &self.inputs
    }

    pub fn motion(&self) -> &MotionLabel {
        &self.motion
    }

    pub fn outputs(&self) -> &[ObjectNode] {
        &self.outputs
    }

    pub fn input_keys(&self) -> impl Iterator<Item = &str> {
        self.inputs.iter().map(ObjectNode::key)
    }

    pub fn output_keys(&self) -> impl Iterator<Item = &str> {
        self.outputs.iter().map(ObjectNode::key)
    }

    pub fn consumes(&self, key: &str) -> bool {
        self.input_keys().any(|k| k == key)
    }

    pub fn produces(&self, key: &str) -> bool {
        self.output_keys().any(|k| k == key)
    }

    /// True when `key` is an output that the unit does not also take as
    /// input. Utensils that pass through a unit are produced but not created.
    pub fn creates(&self, key: &str) -> bool {
        self.produces(key) && !self.consumes(key)
    }

    pub fn canonical(&self) -> CanonicalForm {
        let mut inputs: Vec<String> = self.input_keys().map(str::to_string).collect();
        let mut outputs: Vec<String> = self.output_keys().map(str::to_string).collect();
        inputs.sort();
        outputs.sort();
        CanonicalForm {
            inputs,
            motion: self.motion.as_str().to_string(),
            outputs,
        }
    }
}

impl PartialEq for FunctionalUnit {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for FunctionalUnit {}
