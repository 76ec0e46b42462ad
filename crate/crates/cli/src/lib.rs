//! Command implementations behind the `foon` binary.
//!
//! Each command loads its inputs, computes every result in memory and only
//! then touches the filesystem, so a failed run leaves no partial output.

pub mod dot;

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::thread;

use foon_core::{
    gbfs_retrieve, ids_retrieve, parse_kitchen, parse_motions, parse_subgraph,
    parse_substitutions, serialize_subgraph, validate_tree, Algorithm, Foon, Heuristic,
    KitchenState, MotionSuccessTable, ObjectNode, ParseError, Retrieval, RetrievalError,
    SubstitutionMap, TaskTree,
};
use thiserror::Error;

pub use dot::export_dot;

pub const STATS_HEADER: [&str; 4] = ["goal", "algorithm", "units_in_tree", "units_expanded"];

/// Exit status table, also printed by `--help`.
pub const EXIT_CODES: &str = "\
Exit codes:
  0  success
  2  invalid arguments
  3  input file missing, unreadable or malformed
  4  goal not found in the graph or the kitchen
  5  a required object cannot be produced
  6  no task tree within the depth ceiling
  7  task tree steps depend on each other cyclically
  8  goal name matches several objects
  9  output file could not be written";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Retrieval(#[from] RetrievalError),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Read { .. } | CliError::Parse { .. } => 3,
            CliError::Retrieval(e) => match e {
                RetrievalError::GoalNotFound(_) => 4,
                RetrievalError::UnreachableGoal(_) => 5,
                RetrievalError::NoSolutionWithinDepth(_) => 6,
                RetrievalError::CyclicDependency => 7,
                RetrievalError::AmbiguousGoal { .. } => 8,
                RetrievalError::InvalidDepthCeiling => 2,
            },
            CliError::Write { .. } => 9,
        }
    }
}

/// Short name of a retrieval failure, as shown in stats tables.
pub fn error_kind(err: &RetrievalError) -> &'static str {
    match err {
        RetrievalError::GoalNotFound(_) => "GoalNotFound",
        RetrievalError::UnreachableGoal(_) => "UnreachableGoal",
        RetrievalError::NoSolutionWithinDepth(_) => "NoSolutionWithinDepth",
        RetrievalError::CyclicDependency => "CyclicDependency",
        RetrievalError::AmbiguousGoal { .. } => "AmbiguousGoal",
        RetrievalError::InvalidDepthCeiling => "InvalidDepthCeiling",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoChoice {
    One(Algorithm),
    All,
}

impl AlgoChoice {
    pub fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgoChoice::One(a) => vec![a],
            AlgoChoice::All => Algorithm::ALL.to_vec(),
        }
    }
}

impl std::str::FromStr for AlgoChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(AlgoChoice::All);
        }
        s.parse::<Algorithm>()
            .map(AlgoChoice::One)
            .map_err(|_| format!("unknown algorithm {s:?}; expected ids, gbfs-h1, gbfs-h2 or all"))
    }
}

/// Files and graph shared by `retrieve` and `stats`.
#[derive(Debug, Clone)]
pub struct Sources {
    pub foon_paths: Vec<PathBuf>,
    pub kitchen_path: PathBuf,
    pub motions_path: Option<PathBuf>,
    pub subs_path: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub sources: Sources,
    pub goal: String,
    pub goal_by_name: bool,
    pub algo: AlgoChoice,
    pub depth_ceiling: usize,
    pub out: Option<PathBuf>,
    pub dot: Option<PathBuf>,
    pub stats: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_sources(&self.sources, self.algo)?;
        check_ceiling(self.depth_ceiling)
    }
}

#[derive(Debug, Clone)]
pub struct StatsConfig {
    pub sources: Sources,
    pub goals: Vec<String>,
    pub goal_by_name: bool,
    pub depth_ceiling: usize,
}

fn check_sources(sources: &Sources, algo: AlgoChoice) -> Result<(), CliError> {
    if sources.foon_paths.is_empty() {
        return Err(CliError::Usage("at least one --foon file is required".into()));
    }
    let needs_rates = algo.algorithms().contains(&Algorithm::GbfsH1);
    if needs_rates && sources.motions_path.is_none() {
        return Err(CliError::Usage("gbfs-h1 needs a --motions file".into()));
    }
    Ok(())
}

fn check_ceiling(depth_ceiling: usize) -> Result<(), CliError> {
    if depth_ceiling == 0 {
        return Err(CliError::Usage("--depth-ceiling must be at least 1".into()));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Parsed inputs for a run.
#[derive(Debug)]
pub struct Loaded {
    pub foon: Foon,
    pub kitchen: KitchenState,
    pub motions: Option<MotionSuccessTable>,
    pub subs: SubstitutionMap,
}

pub fn load(sources: &Sources) -> Result<Loaded, CliError> {
    let mut foon = Foon::new();
    for path in &sources.foon_paths {
        for unit in parse(path, parse_subgraph)? {
            foon.add_unit(unit);
        }
    }
    let kitchen = parse(&sources.kitchen_path, parse_kitchen)?;
    let motions = match &sources.motions_path {
        Some(p) => Some(parse(p, parse_motions)?),
        None => None,
    };
    let subs = match &sources.subs_path {
        Some(p) => parse(p, parse_substitutions)?,
        None => SubstitutionMap::new(),
    };
    log::info!(
        "loaded {} units, {} kitchen objects, {} substitution entries",
        foon.len(),
        kitchen.len(),
        subs.len()
    );
    Ok(Loaded {
        foon,
        kitchen,
        motions,
        subs,
    })
}

impl Loaded {
    /// Canonical goal key for `goal`, either an object key or a bare name.
    pub fn resolve_goal(&self, goal: &str, by_name: bool) -> Result<String, CliError> {
        if by_name {
            return Ok(foon_core::retrieval::resolve_goal_by_name(&self.foon, &self.kitchen, goal)?);
        }
        ObjectNode::from_key(goal).map(|n| n.key().to_string()).map_err(|e| {
            CliError::Usage(format!("{e}; use --goal-by-name to look a goal up by name"))
        })
    }

    /// # Panics
    ///
    /// If `algorithm` is gbfs-h1 and no motion table was loaded.
    pub fn retrieve(
        &self,
        goal_key: &str,
        algorithm: Algorithm,
        depth_ceiling: usize,
    ) -> Result<Retrieval, RetrievalError> {
        match algorithm {
            Algorithm::Ids => ids_retrieve(&self.foon, goal_key, &self.kitchen, &self.subs, depth_ceiling),
            Algorithm::GbfsH1 => {
                let table = self.motions.as_ref().expect("gbfs-h1 requires a motion table");
                gbfs_retrieve(&self.foon, goal_key, &self.kitchen, &self.subs, Heuristic::MotionSuccess(table))
            }
            Algorithm::GbfsH2 => {
                gbfs_retrieve(&self.foon, goal_key, &self.kitchen, &self.subs, Heuristic::InputCount)
            }
        }
    }

    /// Runs each algorithm on its own thread. Results come back in the order
    /// of `algorithms`.
    pub fn retrieve_all(
        &self,
        goal_key: &str,
        algorithms: &[Algorithm],
        depth_ceiling: usize,
    ) -> Vec<Result<Retrieval, RetrievalError>> {
        if algorithms.len() == 1 {
            return vec![self.retrieve(goal_key, algorithms[0], depth_ceiling)];
        }
        thread::scope(|s| {
            let handles: Vec<_> = algorithms
                .iter()
                .map(|&a| s.spawn(move || self.retrieve(goal_key, a, depth_ceiling)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("retrieval thread panicked"))
                .collect()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsRow {
    pub goal: String,
    pub algorithm: Algorithm,
    pub units_in_tree: usize,
    pub units_expanded: usize,
}

fn stats_csv(rows: &[StatsRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(STATS_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.goal.clone(),
            r.algorithm.to_string(),
            r.units_in_tree.to_string(),
            r.units_expanded.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[derive(Debug, Clone)]
pub struct RetrieveReport {
    pub trees: Vec<TaskTree>,
    pub rows: Vec<StatsRow>,
}

impl RetrieveReport {
    pub fn stats_csv(&self) -> String {
        stats_csv(&self.rows)
    }
}

/// `path` itself for a single algorithm; `stem.<algo>.ext` when several
/// trees go to the same destination.
pub fn output_path(path: &Path, algorithm: Algorithm, several: bool) -> PathBuf {
    if !several {
        return path.to_path_buf();
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}.{algorithm}.{}", ext.to_string_lossy()),
        None => format!("{stem}.{algorithm}"),
    };
    path.with_file_name(name)
}

pub fn cmd_retrieve(config: &RunConfig) -> Result<RetrieveReport, CliError> {
    config.validate()?;
    let loaded = load(&config.sources)?;
    let goal = loaded.resolve_goal(&config.goal, config.goal_by_name)?;
    let algorithms = config.algo.algorithms();

    let mut trees = Vec::new();
    let mut rows = Vec::new();
    for result in loaded.retrieve_all(&goal, &algorithms, config.depth_ceiling) {
        let r = result?;
        rows.push(StatsRow {
            goal: goal.clone(),
            algorithm: r.tree.algorithm,
            units_in_tree: r.stats.units_in_tree,
            units_expanded: r.stats.units_expanded,
        });
        trees.push(r.tree);
    }

    let several = trees.len() > 1;
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    for tree in &trees {
        if let Some(out) = &config.out {
            files.push((output_path(out, tree.algorithm, several), serialize_subgraph(&tree.steps)));
        }
        if let Some(dot) = &config.dot {
            files.push((output_path(dot, tree.algorithm, several), export_dot(tree)));
        }
    }
    if let Some(stats) = &config.stats {
        files.push((stats.clone(), stats_csv(&rows)));
    }
    for (path, contents) in &files {
        write(path, contents)?;
    }
    Ok(RetrieveReport { trees, rows })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeReport {
    /// Unit count of each input, in argument order.
    pub per_file: Vec<(PathBuf, usize)>,
    pub before: usize,
    pub after: usize,
}

pub fn cmd_merge(inputs: &[PathBuf], out: &Path) -> Result<MergeReport, CliError> {
    let mut merged = Foon::new();
    let mut per_file = Vec::with_capacity(inputs.len());
    for path in inputs {
        let units = parse(path, parse_subgraph)?;
        per_file.push((path.clone(), units.len()));
        merged = merged.merge(&Foon::from_units(units));
    }
    let before = per_file.iter().map(|(_, n)| n).sum();
    write(out, &serialize_subgraph(merged.units()))?;
    Ok(MergeReport {
        per_file,
        before,
        after: merged.len(),
    })
}

/// One goal × algorithm cell of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Tree {
        units_in_tree: usize,
        units_expanded: usize,
        valid: bool,
    },
    Failed(&'static str),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Tree {
                units_in_tree,
                valid: true,
                ..
            } => units_in_tree.to_string(),
            Cell::Tree { units_in_tree, .. } => format!("{units_in_tree} (invalid)"),
            Cell::Failed(kind) => (*kind).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsTableRow {
    pub goal: String,
    /// One cell per entry of `Algorithm::ALL`.
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StatsTable {
    pub rows: Vec<StatsTableRow>,
}

impl StatsTable {
    fn header() -> Vec<String> {
        let mut h = vec!["goal".to_string()];
        h.extend(Algorithm::ALL.iter().map(|a| a.to_string()));
        h
    }

    fn records(&self) -> Vec<Vec<String>> {
        let mut records = vec![Self::header()];
        for row in &self.rows {
            let mut r = vec![row.goal.clone()];
            r.extend(row.cells.iter().map(Cell::text));
            records.push(r);
        }
        records
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in self.records() {
            w.write_record(&r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    /// Fixed-width table for reading in a terminal.
    pub fn to_text(&self) -> String {
        let records = self.records();
        let mut widths = vec![0; records[0].len()];
        for r in &records {
            for (w, field) in widths.iter_mut().zip(r) {
                *w = (*w).max(field.chars().count());
            }
        }
        let mut out = String::new();
        for r in &records {
            let line: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(f, &w)| format!("{f:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

/// Retrieves every goal with every algorithm. A goal that fails is reported
/// in its row and the run moves on.
pub fn cmd_stats(config: &StatsConfig) -> Result<StatsTable, CliError> {
    check_sources(&config.sources, AlgoChoice::All)?;
    check_ceiling(config.depth_ceiling)?;
    let loaded = load(&config.sources)?;
    let mut table = StatsTable::default();
    for goal in &config.goals {
        let key = match loaded.resolve_goal(goal, config.goal_by_name) {
            Ok(k) => k,
            Err(CliError::Retrieval(e)) => {
                let kind = error_kind(&e);
                table.rows.push(StatsTableRow {
                    goal: goal.clone(),
                    cells: vec![Cell::Failed(kind); Algorithm::ALL.len()],
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let cells = loaded
            .retrieve_all(&key, &Algorithm::ALL, config.depth_ceiling)
            .into_iter()
            .map(|r| match r {
                Ok(r) => Cell::Tree {
                    units_in_tree: r.stats.units_in_tree,
                    units_expanded: r.stats.units_expanded,
                    valid: validate_tree(&r.tree, &loaded.kitchen, &loaded.subs).is_valid(),
                },
                Err(e) => Cell::Failed(error_kind(&e)),
            })
            .collect();
        table.rows.push(StatsTableRow { goal: key, cells });
    }
    Ok(table)
}

/// Goals listed one per line; blank lines and `#` comments are skipped.
pub fn read_goal_file(path: &Path) -> Result<Vec<String>, CliError> {
    Ok(read(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let errors = [
            CliError::Usage(String::new()),
            CliError::Parse {
                path: PathBuf::new(),
                source: ParseError::MalformedDocument(String::new()),
            },
            RetrievalError::GoalNotFound(String::new()).into(),
            RetrievalError::UnreachableGoal(String::new()).into(),
            RetrievalError::NoSolutionWithinDepth(1).into(),
            RetrievalError::CyclicDependency.into(),
            RetrievalError::AmbiguousGoal {
                name: String::new(),
                matches: vec![],
            }
            .into(),
            CliError::Write {
                path: PathBuf::new(),
                source: io::Error::other("x"),
            },
        ];
        let mut codes: Vec<i32> = errors.iter().map(CliError::exit_code).collect();
        assert!(codes.iter().all(|&c| c != 0 && c != 1));
        codes.sort_unstable();
        codes.dedup();
        assert_eq!(codes.len(), errors.len());
        for c in codes {
            assert!(EXIT_CODES.contains(&format!("  {c}  ")));
        }
    }

    #[test]
    fn algo_choice_parses() {
        assert_eq!("all".parse::<AlgoChoice>(), Ok(AlgoChoice::All));
        assert_eq!("gbfs-h2".parse::<AlgoChoice>(), Ok(AlgoChoice::One(Algorithm::GbfsH2)));
        assert!("bfs".parse::<AlgoChoice>().is_err());
    }

    #[test]
    fn output_paths() {
        let p = Path::new("/tmp/tree.foon");
        assert_eq!(output_path(p, Algorithm::Ids, false), p);
        assert_eq!(output_path(p, Algorithm::GbfsH1, true), Path::new("/tmp/tree.gbfs-h1.foon"));
        assert_eq!(output_path(Path::new("out"), Algorithm::Ids, true), Path::new("out.ids"));
    }

    fn sources(motions: bool) -> Sources {
        Sources {
            foon_paths: vec!["a.foon".into()],
            kitchen_path: "k.json".into(),
            motions_path: motions.then(|| "m.txt".into()),
            subs_path: None,
        }
    }

    #[test]
    fn h1_needs_motions() {
        assert!(check_sources(&sources(false), AlgoChoice::One(Algorithm::GbfsH1)).is_err());
        assert!(check_sources(&sources(false), AlgoChoice::All).is_err());
        assert!(check_sources(&sources(false), AlgoChoice::One(Algorithm::Ids)).is_ok());
        assert!(check_sources(&sources(true), AlgoChoice::All).is_ok());
    }

    #[test]
    fn zero_ceiling_is_usage_error() {
        assert_eq!(check_ceiling(0).unwrap_err().exit_code(), 2);
        assert!(check_ceiling(1).is_ok());
    }

    #[test]
    fn stats_header() {
        assert_eq!(stats_csv(&[]), "goal,algorithm,units_in_tree,units_expanded\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = StatsTable::default();
        assert_eq!(t.to_csv(), "goal,ids,gbfs-h1,gbfs-h2\n");
        assert_eq!(t.to_text().lines().count(), 1);
    }
}
