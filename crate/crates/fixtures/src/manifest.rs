use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad manifest row {row}: {reason}")]
    BadRow { row: usize, reason: String },
}

/// Unit chosen at a node with more than one creating unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fork {
    pub key: String,
    pub candidates: Vec<usize>,
    pub first: usize,
    pub best_rate: usize,
    pub fewest_inputs: usize,
}

/// Tree obtained by applying one fixed choice policy to every needed key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolicyTree {
    pub goal: String,
    pub algorithm: String,
    /// Sorted unit ids, `None` when the policy dead-ends.
    pub units: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    /// File name to unit signatures in file order (before cross-file dedupe).
    pub files: BTreeMap<String, Vec<String>>,
    /// Universal unit signatures; the position is the unit id.
    pub units: Vec<String>,
    pub kitchen: BTreeSet<String>,
    pub goals: Vec<String>,
    pub combinations: BTreeMap<String, usize>,
    /// Every executable tree per goal, each as a sorted list of unit ids.
    pub valid_trees: BTreeMap<String, BTreeSet<Vec<usize>>>,
    pub policy_trees: Vec<PolicyTree>,
    /// Smallest depth limit at which first-candidate search succeeds.
    pub ids_depth: BTreeMap<String, Option<usize>>,
    pub forks: Vec<Fork>,
}

fn unit_id(i: usize) -> String {
    format!("u{i:02}")
}

fn ids(list: &[usize]) -> String {
    list.iter().map(|&i| unit_id(i)).collect::<Vec<_>>().join(" ")
}

impl Manifest {
    pub fn policy_tree(&self, goal: &str, algorithm: &str) -> Option<&PolicyTree> {
        self.policy_trees
            .iter()
            .find(|t| t.goal == goal && t.algorithm == algorithm)
    }

    pub fn fork(&self, key: &str) -> Option<&Fork> {
        self.forks.iter().find(|f| f.key == key)
    }

    pub fn unit_index(&self, signature: &str) -> Option<usize> {
        self.units.iter().position(|s| s == signature)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .flexible(true)
            .from_writer(Vec::new());
        let mut row = |fields: &[&str]| w.write_record(fields).expect("in-memory write");
        for (file, sigs) in &self.files {
            row(&["file", file, &sigs.len().to_string()]);
            for (pos, sig) in sigs.iter().enumerate() {
                row(&["fileunit", file, &pos.to_string(), sig]);
            }
        }
        for (i, sig) in self.units.iter().enumerate() {
            row(&["unit", &unit_id(i), sig]);
        }
        for key in &self.kitchen {
            row(&["kitchen", key]);
        }
        for goal in &self.goals {
            row(&["goal", goal]);
            row(&["combos", goal, &self.combinations[goal].to_string()]);
            let depth = match self.ids_depth[goal] {
                Some(d) => d.to_string(),
                None => "none".to_string(),
            };
            row(&["depth", goal, &depth]);
            for tree in &self.valid_trees[goal] {
                row(&["valid", goal, &ids(tree)]);
            }
        }
        for t in &self.policy_trees {
            match &t.units {
                Some(units) => row(&["tree", &t.goal, &t.algorithm, &units.len().to_string(), &ids(units)]),
                None => row(&["tree", &t.goal, &t.algorithm, "none", ""]),
            }
        }
        for f in &self.forks {
            row(&[
                "fork",
                &f.key,
                &ids(&f.candidates),
                &unit_id(f.first),
                &unit_id(f.best_rate),
                &unit_id(f.fewest_inputs),
            ]);
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn from_csv(text: &str) -> Result<Self, ManifestError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut m = Manifest::default();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let bad = |reason: &str| ManifestError::BadRow {
                row: row + 1,
                reason: reason.to_string(),
            };
            let field = |i: usize| rec.get(i).ok_or_else(|| bad("missing field"));
            let parse_id = |s: &str| -> Result<usize, ManifestError> {
                s.strip_prefix('u')
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| bad("bad unit id"))
            };
            let parse_ids = |s: &str| -> Result<Vec<usize>, ManifestError> {
                s.split_whitespace().map(parse_id).collect()
            };
            match field(0)? {
                "file" => {
                    m.files.entry(field(1)?.to_string()).or_default();
                }
                "fileunit" => m
                    .files
                    .entry(field(1)?.to_string())
                    .or_default()
                    .push(field(3)?.to_string()),
                "unit" => m.units.push(field(2)?.to_string()),
                "kitchen" => {
                    m.kitchen.insert(field(1)?.to_string());
                }
                "goal" => {
                    let g = field(1)?.to_string();
                    m.valid_trees.entry(g.clone()).or_default();
                    m.goals.push(g);
                }
                "combos" => {
                    let n = field(2)?.parse().map_err(|_| bad("bad count"))?;
                    m.combinations.insert(field(1)?.to_string(), n);
                }
                "depth" => {
                    let d = match field(2)? {
                        "none" => None,
                        s => Some(s.parse().map_err(|_| bad("bad depth"))?),
                    };
                    m.ids_depth.insert(field(1)?.to_string(), d);
                }
                "valid" => {
                    let tree = parse_ids(field(2)?)?;
                    m.valid_trees
                        .entry(field(1)?.to_string())
                        .or_default()
                        .insert(tree);
                }
                "tree" => {
                    let units = match field(3)? {
                        "none" => None,
                        _ => Some(parse_ids(field(4)?)?),
                    };
                    m.policy_trees.push(PolicyTree {
                        goal: field(1)?.to_string(),
                        algorithm: field(2)?.to_string(),
                        units,
                    });
                }
                "fork" => m.forks.push(Fork {
                    key: field(1)?.to_string(),
                    candidates: parse_ids(field(2)?)?,
                    first: parse_id(field(3)?)?,
                    best_rate: parse_id(field(4)?)?,
                    fewest_inputs: parse_id(field(5)?)?,
                }),
                other => return Err(bad(&format!("unknown row kind {other:?}"))),
            }
        }
        Ok(m)
    }
}
