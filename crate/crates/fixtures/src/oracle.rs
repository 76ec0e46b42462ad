//! Exhaustive enumeration over the fixture corpus.
//!
//! Keys are `name|states|ingredients`, lowercased, with states and
//! ingredients sorted. A unit creates a key when the key is among its
//! outputs but not among its inputs.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::Path;

use thiserror::Error;

use crate::manifest::{Fork, Manifest, PolicyTree};
use crate::{GOALS_FILE, KITCHEN_FILE, MOTIONS_FILE, SUBSTITUTIONS_FILE, UNIVERSE_FILES};

/// Enumeration budget per goal.
pub const MAX_COMBINATIONS: usize = 100_000;

const DEPTH_SWEEP_LIMIT: usize = 64;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("i/o on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{file}:{line}: {reason}")]
    Corpus {
        file: String,
        line: usize,
        reason: String,
    },
    #[error("goal {goal:?} needs more than {limit} combinations (stopped at {count})")]
    TooLarge {
        goal: String,
        count: usize,
        limit: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct RawUnit {
    inputs: Vec<String>,
    motion: String,
    outputs: Vec<String>,
}

impl RawUnit {
    fn signature(&self) -> String {
        let mut i = self.inputs.clone();
        let mut o = self.outputs.clone();
        i.sort();
        o.sort();
        format!("{} -{}-> {}", i.join(";"), self.motion, o.join(";"))
    }

    fn creates(&self, key: &str) -> bool {
        self.outputs.iter().any(|o| o == key) && !self.inputs.iter().any(|i| i == key)
    }
}

fn canon(name: &str, states: &[&str], ingredients: &[&str]) -> String {
    let clean = |v: &[&str]| {
        let mut v: Vec<String> = v
            .iter()
            .map(|s| s.trim().to_lowercase())
            .filter(|s| !s.is_empty())
            .collect();
        v.sort();
        v
    };
    let mut states = clean(states);
    states.dedup();
    format!(
        "{}|{}|{}",
        name.trim().to_lowercase(),
        states.join(","),
        clean(ingredients).join(",")
    )
}

fn read(path: &Path) -> Result<String, OracleError> {
    std::fs::read_to_string(path).map_err(|source| OracleError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_units(file: &str, text: &str) -> Result<Vec<RawUnit>, OracleError> {
    let err = |line: usize, reason: &str| OracleError::Corpus {
        file: file.to_string(),
        line,
        reason: reason.to_string(),
    };
    let mut units = Vec::new();
    let (mut ins, mut outs, mut motion) = (Vec::new(), Vec::new(), None::<String>);
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        match cols[0] {
            "O" => {
                let name = cols.get(1).ok_or_else(|| err(n + 1, "object without name"))?;
                let states: Vec<&str> = cols.get(2).map(|s| s.split(',').collect()).unwrap_or_default();
                let ingr: Vec<&str> = cols
                    .get(3)
                    .map(|s| s.trim_matches(|c| c == '[' || c == ']').split(',').collect())
                    .unwrap_or_default();
                let key = canon(name, &states, &ingr);
                if motion.is_none() {
                    ins.push(key)
                } else {
                    outs.push(key)
                }
            }
            "M" => motion = Some(cols.get(1).ok_or_else(|| err(n + 1, "empty motion"))?.trim().to_lowercase()),
            "//" => {
                let m = motion.take().ok_or_else(|| err(n + 1, "unit without motion"))?;
                if ins.is_empty() || outs.is_empty() {
                    return Err(err(n + 1, "unit without inputs or outputs"));
                }
                units.push(RawUnit {
                    inputs: std::mem::take(&mut ins),
                    motion: m,
                    outputs: std::mem::take(&mut outs),
                });
            }
            _ => return Err(err(n + 1, "unknown tag")),
        }
    }
    Ok(units)
}

fn read_kitchen(text: &str) -> Result<BTreeSet<String>, OracleError> {
    let bad = |reason: &str| OracleError::Corpus {
        file: KITCHEN_FILE.to_string(),
        line: 0,
        reason: reason.to_string(),
    };
    let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let mut out = BTreeSet::new();
    for entry in doc.as_array().ok_or_else(|| bad("not a list"))? {
        let strs = |field: &str| -> Vec<&str> {
            entry[field]
                .as_array()
                .map(|a| a.iter().filter_map(|v| v.as_str()).collect())
                .unwrap_or_default()
        };
        let label = entry["label"].as_str().ok_or_else(|| bad("entry without label"))?;
        out.insert(canon(label, &strs("states"), &strs("ingredients")));
    }
    Ok(out)
}

fn read_rates(text: &str) -> BTreeMap<String, f64> {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .filter_map(|l| {
            let mut parts: Vec<&str> = l.split_whitespace().collect();
            let rate = parts.pop()?.parse().ok()?;
            Some((parts.join(" ").to_lowercase(), rate))
        })
        .collect()
}

fn read_substitutions(text: &str) -> BTreeMap<String, Vec<String>> {
    let mut out = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((lhs, rhs)) = line.split_once('=') else {
            continue;
        };
        // A comma-separated piece containing a pipe starts a new key once the
        // current key already has both of its pipes.
        let mut keys: Vec<String> = Vec::new();
        for piece in rhs.split(',') {
            match keys.last_mut() {
                Some(cur) if cur.matches('|').count() < 2 || !piece.contains('|') => {
                    cur.push(',');
                    cur.push_str(piece);
                }
                _ => keys.push(piece.to_string()),
            }
        }
        let norm = |k: &str| {
            let parts: Vec<&str> = k.split('|').collect();
            let states: Vec<&str> = parts.get(1).map(|s| s.split(',').collect()).unwrap_or_default();
            let ingr: Vec<&str> = parts.get(2).map(|s| s.split(',').collect()).unwrap_or_default();
            canon(parts[0], &states, &ingr)
        };
        out.insert(norm(lhs), keys.iter().map(|k| norm(k)).collect());
    }
    out
}

struct World {
    units: Vec<RawUnit>,
    kitchen: BTreeSet<String>,
    subs: BTreeMap<String, Vec<String>>,
    rates: BTreeMap<String, f64>,
}

impl World {
    fn available(&self, key: &str) -> bool {
        self.kitchen.contains(key)
            || self
                .subs
                .get(key)
                .is_some_and(|eqs| eqs.iter().any(|e| self.kitchen.contains(e)))
    }

    /// Linear scan; the oracle never uses an index.
    fn creators(&self, key: &str) -> Vec<usize> {
        (0..self.units.len())
            .filter(|&i| self.units[i].creates(key))
            .collect()
    }

    fn rate(&self, unit: usize) -> f64 {
        self.rates.get(&self.units[unit].motion).copied().unwrap_or(0.0)
    }

    fn pick_first(&self, cands: &[usize]) -> usize {
        cands[0]
    }

    fn pick_best_rate(&self, cands: &[usize]) -> usize {
        let mut best = cands[0];
        for &c in &cands[1..] {
            if self.rate(c) > self.rate(best) {
                best = c;
            }
        }
        best
    }

    fn pick_fewest_inputs(&self, cands: &[usize]) -> usize {
        let mut best = cands[0];
        for &c in &cands[1..] {
            if self.units[c].inputs.len() < self.units[best].inputs.len() {
                best = c;
            }
        }
        best
    }

    /// All consistent key -> unit assignments reachable from `goal`.
    fn enumerate(&self, goal: &str) -> Result<(BTreeSet<Vec<usize>>, usize), OracleError> {
        let mut trees = BTreeSet::new();
        let mut count = 0;
        let mut assign = BTreeMap::new();
        self.branch(goal, vec![goal.to_string()], &mut assign, &mut trees, &mut count)?;
        Ok((trees, count))
    }

    fn branch(
        &self,
        goal: &str,
        mut pending: Vec<String>,
        assign: &mut BTreeMap<String, usize>,
        trees: &mut BTreeSet<Vec<usize>>,
        count: &mut usize,
    ) -> Result<(), OracleError> {
        let key = loop {
            match pending.pop() {
                None => {
                    *count += 1;
                    self.check_budget(goal, *count)?;
                    let set: BTreeSet<usize> = assign.values().copied().collect();
                    let tree: Vec<usize> = set.into_iter().collect();
                    if self.executable(&tree, goal) {
                        trees.insert(tree);
                    }
                    return Ok(());
                }
                Some(k) if self.available(&k) || assign.contains_key(&k) => continue,
                Some(k) => break k,
            }
        };
        let cands = self.creators(&key);
        if cands.is_empty() {
            *count += 1;
            return self.check_budget(goal, *count);
        }
        for c in cands {
            assign.insert(key.clone(), c);
            let mut next = pending.clone();
            next.extend(self.units[c].inputs.iter().cloned());
            self.branch(goal, next, assign, trees, count)?;
            assign.remove(&key);
        }
        Ok(())
    }

    fn check_budget(&self, goal: &str, count: usize) -> Result<(), OracleError> {
        if count > MAX_COMBINATIONS {
            return Err(OracleError::TooLarge {
                goal: goal.to_string(),
                count,
                limit: MAX_COMBINATIONS,
            });
        }
        Ok(())
    }

    /// Fires units in any order until nothing changes.
    fn executable(&self, tree: &[usize], goal: &str) -> bool {
        let mut have: HashSet<String> = HashSet::new();
        let mut fired = vec![false; tree.len()];
        loop {
            let mut progress = false;
            for (slot, &u) in tree.iter().enumerate() {
                if fired[slot] {
                    continue;
                }
                let unit = &self.units[u];
                if unit.inputs.iter().all(|i| have.contains(i) || self.available(i)) {
                    fired[slot] = true;
                    progress = true;
                    have.extend(unit.outputs.iter().cloned());
                }
            }
            if !progress {
                break;
            }
        }
        fired.iter().all(|&f| f) && (have.contains(goal) || self.available(goal))
    }

    fn policy_tree(&self, goal: &str, pick: impl Fn(&[usize]) -> usize) -> Option<Vec<usize>> {
        let mut assign: BTreeMap<String, usize> = BTreeMap::new();
        let mut pending = vec![goal.to_string()];
        while let Some(k) = pending.pop() {
            if self.available(&k) || assign.contains_key(&k) {
                continue;
            }
            let cands = self.creators(&k);
            if cands.is_empty() {
                return None;
            }
            let c = pick(&cands);
            assign.insert(k, c);
            pending.extend(self.units[c].inputs.iter().cloned());
        }
        let set: BTreeSet<usize> = assign.into_values().collect();
        let tree: Vec<usize> = set.into_iter().collect();
        self.executable(&tree, goal).then_some(tree)
    }

    fn first_candidate_within(&self, key: &str, limit: usize, path: &mut Vec<String>) -> bool {
        if self.available(key) {
            return true;
        }
        if limit == 0 || path.iter().any(|p| p == key) {
            return false;
        }
        let Some(&first) = self.creators(key).first() else {
            return false;
        };
        path.push(key.to_string());
        let ok = self.units[first]
            .inputs
            .iter()
            .all(|i| self.first_candidate_within(i, limit - 1, path));
        path.pop();
        ok
    }

    fn min_first_candidate_depth(&self, goal: &str) -> Option<usize> {
        if self.available(goal) {
            return Some(0);
        }
        (1..=DEPTH_SWEEP_LIMIT).find(|&d| self.first_candidate_within(goal, d, &mut Vec::new()))
    }
}

/// Chooses one unit index from a candidate list.
type Pick<'a> = dyn Fn(&[usize]) -> usize + 'a;

/// Builds the manifest for the corpus directory by exhaustive enumeration.
pub fn generate_manifest(corpus: &Path) -> Result<Manifest, OracleError> {
    let mut manifest = Manifest::default();
    let mut units: Vec<RawUnit> = Vec::new();
    let mut seen = HashSet::new();
    for file in UNIVERSE_FILES {
        let file_units = read_units(file, &read(&corpus.join(file))?)?;
        manifest.files.insert(
            file.to_string(),
            file_units.iter().map(RawUnit::signature).collect(),
        );
        for u in file_units {
            if seen.insert(u.signature()) {
                units.push(u);
            }
        }
    }
    manifest.units = units.iter().map(RawUnit::signature).collect();

    let world = World {
        units,
        kitchen: read_kitchen(&read(&corpus.join(KITCHEN_FILE))?)?,
        subs: read_substitutions(&read(&corpus.join(SUBSTITUTIONS_FILE))?),
        rates: read_rates(&read(&corpus.join(MOTIONS_FILE))?),
    };
    manifest.kitchen = world.kitchen.clone();

    let goals: Vec<String> = read(&corpus.join(GOALS_FILE))?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.split('|').collect();
            let states: Vec<&str> = parts.get(1).map(|s| s.split(',').collect()).unwrap_or_default();
            let ingr: Vec<&str> = parts.get(2).map(|s| s.split(',').collect()).unwrap_or_default();
            canon(parts[0], &states, &ingr)
        })
        .collect();

    for goal in &goals {
        let (trees, count) = world.enumerate(goal)?;
        manifest.valid_trees.insert(goal.clone(), trees);
        manifest.combinations.insert(goal.clone(), count);
        manifest
            .ids_depth
            .insert(goal.clone(), world.min_first_candidate_depth(goal));
        let policies: [(&str, &Pick); 3] = [
            ("ids", &|c| world.pick_first(c)),
            ("gbfs-h1", &|c| world.pick_best_rate(c)),
            ("gbfs-h2", &|c| world.pick_fewest_inputs(c)),
        ];
        for (algorithm, pick) in policies {
            manifest.policy_trees.push(PolicyTree {
                goal: goal.clone(),
                algorithm: algorithm.to_string(),
                units: world.policy_tree(goal, pick),
            });
        }
    }
    manifest.goals = goals;

    let outputs: BTreeSet<&String> = world.units.iter().flat_map(|u| u.outputs.iter()).collect();
    for key in outputs {
        let cands = world.creators(key);
        if cands.len() < 2 {
            continue;
        }
        manifest.forks.push(Fork {
            key: key.clone(),
            first: world.pick_first(&cands),
            best_rate: world.pick_best_rate(&cands),
            fewest_inputs: world.pick_fewest_inputs(&cands),
            candidates: cands,
        });
    }
    Ok(manifest)
}
