//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fail.

use std::collections::BTreeSet;
use std::fs;
use std::hint::black_box;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use foon_cli::{cmd_retrieve, AlgoChoice, RunConfig, Sources};
use foon_core::retrieval::DEFAULT_DEPTH_CEILING;
use foon_core::{
    gbfs_retrieve, ids_retrieve, parse_kitchen, parse_motions, parse_subgraph,
    parse_substitutions, serialize_subgraph, validate_tree, Algorithm, CanonicalForm, Foon,
    FunctionalUnit, Heuristic, KitchenState, MotionLabel, MotionSuccessTable, ObjectNode,
    Retrieval, SubstitutionMap,
};
use foon_fixtures::{
    committed_manifest, corpus_file, universe_paths, Manifest, ICE_GOAL, KITCHEN_FILE,
    MOTIONS_FILE, SCRAMBLED_EGG_GOAL, SUBSTITUTIONS_FILE, UNIVERSE_FILES, WHIPPED_CREAM_GOAL,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner, RngAlgorithm};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    }};
}

struct Corpus {
    foon: Foon,
    kitchen: KitchenState,
    subs: SubstitutionMap,
    motions: MotionSuccessTable,
    manifest: Manifest,
}

fn read(name: &str) -> String {
    fs::read_to_string(corpus_file(name)).unwrap()
}

fn load() -> Corpus {
    let mut foon = Foon::new();
    for path in universe_paths() {
        let units = parse_subgraph(&fs::read_to_string(path).unwrap()).unwrap();
        foon = foon.merge(&Foon::from_units(units));
    }
    Corpus {
        foon,
        kitchen: parse_kitchen(&read(KITCHEN_FILE)).unwrap(),
        subs: parse_substitutions(&read(SUBSTITUTIONS_FILE)).unwrap(),
        motions: parse_motions(&read(MOTIONS_FILE)).unwrap(),
        manifest: committed_manifest().unwrap(),
    }
}

fn retrieve(c: &Corpus, goal: &str, algorithm: Algorithm) -> Result<Retrieval, String> {
    match algorithm {
        Algorithm::Ids => ids_retrieve(&c.foon, goal, &c.kitchen, &c.subs, DEFAULT_DEPTH_CEILING),
        Algorithm::GbfsH1 => gbfs_retrieve(&c.foon, goal, &c.kitchen, &c.subs, Heuristic::MotionSuccess(&c.motions)),
        Algorithm::GbfsH2 => gbfs_retrieve(&c.foon, goal, &c.kitchen, &c.subs, Heuristic::InputCount),
    }
    .map_err(|e| format!("{algorithm} on {goal}: {e}"))
}

fn rate(c: &Corpus, u: &FunctionalUnit) -> f64 {
    c.motions.get(u.motion().as_str()).unwrap_or(0.0)
}

fn mix_over_stir(c: &Corpus) -> Outcome {
    ensure!(c.motions.get("mix") == Some(0.90), "mix rate {:?}", c.motions.get("mix"));
    ensure!(c.motions.get("stir") == Some(0.80), "stir rate {:?}", c.motions.get("stir"));
    let r = retrieve(c, WHIPPED_CREAM_GOAL, Algorithm::GbfsH1)?;
    let fork = r
        .trace
        .iter()
        .find(|e| e.key == WHIPPED_CREAM_GOAL)
        .ok_or("no expansion of the whipped cream goal")?;
    let motions: BTreeSet<&str> = fork.candidates.iter().map(|&i| c.foon.unit(i).motion().as_str()).collect();
    ensure!(motions == BTreeSet::from(["mix", "stir"]), "fork candidates {motions:?}");
    let picked = c.foon.unit(fork.chosen).motion().as_str();
    ensure!(picked == "mix", "gbfs-h1 picked {picked}");
    let oracle = c.manifest.fork(WHIPPED_CREAM_GOAL).ok_or("fork missing from manifest")?;
    ensure!(oracle.best_rate == fork.chosen, "manifest expects unit {}", oracle.best_rate);
    Ok("picked mix (0.90) over stir (0.80)".into())
}

fn three_inputs_over_four(c: &Corpus) -> Outcome {
    let r = retrieve(c, SCRAMBLED_EGG_GOAL, Algorithm::GbfsH2)?;
    let fork = r
        .trace
        .iter()
        .find(|e| e.key == SCRAMBLED_EGG_GOAL)
        .ok_or("no expansion of the scrambled egg goal")?;
    let sizes: Vec<usize> = fork.candidates.iter().map(|&i| c.foon.unit(i).inputs().len()).collect();
    ensure!(sizes == [4, 3], "candidate input counts {sizes:?}");
    let chosen = c.foon.unit(fork.chosen);
    let inputs: Vec<&str> = chosen.input_keys().map(|k| k.split('|').next().unwrap()).collect();
    ensure!(inputs == ["egg", "oil", "salt"], "gbfs-h2 picked inputs {inputs:?}");
    let oracle = c.manifest.fork(SCRAMBLED_EGG_GOAL).ok_or("fork missing from manifest")?;
    ensure!(oracle.fewest_inputs == fork.chosen, "manifest expects unit {}", oracle.fewest_inputs);
    Ok("picked {egg, oil, salt} over {egg, oil, cheese, onion}".into())
}

fn rate_table(c: &Corpus) -> Outcome {
    let expected = [
        ("chop", 0.10),
        ("pour", 0.90),
        ("mix", 0.90),
        ("crack", 0.20),
        ("pick-and-place", 0.80),
        ("stir", 0.80),
        ("bake", 0.40),
    ];
    ensure!(c.motions.len() == expected.len(), "{} rates parsed", c.motions.len());
    for (label, rate) in expected {
        ensure!(c.motions.get(label) == Some(rate), "{label}: {:?}", c.motions.get(label));
    }
    Ok("7 rates, exact".into())
}

fn substitute_suite(c: &Corpus) -> Outcome {
    ensure!(c.foon.len() >= 12, "only {} units", c.foon.len());
    ensure!(c.manifest.goals.len() >= 3, "only {} goals", c.manifest.goals.len());
    let mut trees = 0;
    let mut expansions = 0;
    for goal in &c.manifest.goals {
        for algorithm in Algorithm::ALL {
            let r = retrieve(c, goal, algorithm)?;
            // (a) independent executor
            ensure!(validate_tree(&r.tree, &c.kitchen, &c.subs).is_valid(), "{algorithm} {goal}: invalid tree");
            // (b) brute-force valid set
            let ids: BTreeSet<usize> = r.tree.steps.iter().map(|u| c.foon.index_of(u).unwrap()).collect();
            let ids: Vec<usize> = ids.into_iter().collect();
            ensure!(c.manifest.valid_trees[goal].contains(&ids), "{algorithm} {goal}: {ids:?} not in valid set");
            // (c) heuristic dominance at every expansion
            for e in &r.trace {
                let chosen = c.foon.unit(e.chosen);
                for &other in &e.candidates {
                    let other = c.foon.unit(other);
                    let ok = match algorithm {
                        Algorithm::Ids => e.chosen == e.candidates[0],
                        Algorithm::GbfsH1 => rate(c, chosen) >= rate(c, other),
                        Algorithm::GbfsH2 => chosen.inputs().len() <= other.inputs().len(),
                    };
                    ensure!(ok, "{algorithm} {goal}: dominated choice at {}", e.key);
                }
                expansions += 1;
            }
            // (d) minimal depth
            if algorithm == Algorithm::Ids {
                let depth = c.manifest.ids_depth[goal];
                ensure!(Some(r.stats.max_depth_reached) == depth, "{goal}: depth {} vs {depth:?}", r.stats.max_depth_reached);
            }
            trees += 1;
        }
    }
    Ok(format!("{trees} trees, {expansions} expansions, {} units", c.foon.len()))
}

fn ice(c: &Corpus) -> Outcome {
    let mut sizes = Vec::new();
    for algorithm in Algorithm::ALL {
        sizes.push(retrieve(c, ICE_GOAL, algorithm)?.stats.units_in_tree);
    }
    ensure!(sizes == [1, 1, 1], "sizes {sizes:?}");
    Ok("1 / 1 / 1".into())
}

fn determinism(c: &Corpus) -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for (g, goal) in c.manifest.goals.iter().enumerate() {
        let config = RunConfig {
            sources: Sources {
                foon_paths: universe_paths(),
                kitchen_path: corpus_file(KITCHEN_FILE),
                motions_path: Some(corpus_file(MOTIONS_FILE)),
                subs_path: Some(corpus_file(SUBSTITUTIONS_FILE)),
            },
            goal: goal.clone(),
            goal_by_name: false,
            algo: AlgoChoice::All,
            depth_ceiling: DEFAULT_DEPTH_CEILING,
            out: Some(dir.path().join(format!("g{g}.foon"))),
            dot: None,
            stats: Some(dir.path().join(format!("g{g}.csv"))),
        };
        let mut paths: Vec<PathBuf> = Algorithm::ALL
            .iter()
            .map(|a| dir.path().join(format!("g{g}.{a}.foon")))
            .collect();
        paths.push(dir.path().join(format!("g{g}.csv")));

        let mut first: Option<Vec<Vec<u8>>> = None;
        for run in 0..10 {
            cmd_retrieve(&config).map_err(|e| format!("{goal}: {e}"))?;
            let bytes: Vec<Vec<u8>> = paths.iter().map(|p| fs::read(p).unwrap()).collect();
            match &first {
                None => first = Some(bytes),
                Some(f) => ensure!(*f == bytes, "{goal}: run {run} differs"),
            }
        }
        compared += paths.len();
    }
    Ok(format!("{compared} files identical over 10 runs"))
}

fn merge_algebra(c: &Corpus) -> Outcome {
    let canon = |f: &Foon| -> BTreeSet<CanonicalForm> { f.units().iter().map(FunctionalUnit::canonical).collect() };
    let base = canon(&c.foon);
    ensure!(canon(&c.foon.merge(&c.foon)) == base, "merge(F, F) differs from F");
    ensure!(canon(&c.foon.merge(&Foon::new())) == base, "merge(F, empty) differs from F");
    ensure!(canon(&Foon::new().merge(&c.foon)) == base, "merge(empty, F) differs from F");
    ensure!(c.foon.merge(&c.foon).len() == c.foon.len(), "duplicate units after merge");
    Ok(format!("{} units", base.len()))
}

const NAMES: &[&str] = &["egg", "salt", "olive oil", "bowl", "knife", "ice", "cream", "Onion", " cheese "];
const STATES: &[&str] = &["raw", "chopped", "in bowl", "liquid", "Melted", "whole"];
const MOTIONS: &[&str] = &["mix", "stir", "pick-and-place", "chop", "bake", "pour"];

fn node() -> impl Strategy<Value = ObjectNode> {
    (
        prop::sample::select(NAMES),
        prop::collection::btree_set(prop::sample::select(STATES), 0..3),
        prop::collection::vec(prop::sample::select(NAMES), 0..3),
    )
        .prop_map(|(n, s, i)| ObjectNode::new(n, s, i).unwrap())
}

fn unit() -> impl Strategy<Value = FunctionalUnit> {
    (
        prop::collection::vec(node(), 1..5),
        prop::sample::select(MOTIONS),
        prop::collection::vec(node(), 1..4),
    )
        .prop_map(|(i, m, o)| FunctionalUnit::new(i, MotionLabel::new(m).unwrap(), o).unwrap())
}

fn canonical(units: &[FunctionalUnit]) -> Vec<CanonicalForm> {
    units.iter().map(FunctionalUnit::canonical).collect()
}

fn round_trip_text(text: &str) -> Result<(), String> {
    let once = parse_subgraph(text).map_err(|e| e.to_string())?;
    let twice = parse_subgraph(&serialize_subgraph(&once)).map_err(|e| e.to_string())?;
    ensure!(canonical(&once) == canonical(&twice), "parse, serialize, parse changed the units");
    Ok(())
}

fn round_trip() -> Outcome {
    for name in UNIVERSE_FILES {
        round_trip_text(&read(name)).map_err(|e| format!("{name}: {e}"))?;
    }
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(Config { cases: 1000, failure_persistence: None, ..Config::default() }, rng);
    runner
        .run(&prop::collection::vec(unit(), 0..12), |units| {
            let text = serialize_subgraph(&units);
            let parsed = parse_subgraph(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(canonical(&parsed), canonical(&units));
            round_trip_text(&text).map_err(TestCaseError::fail)?;
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{} corpus files + 1000 random files", UNIVERSE_FILES.len()))
}

fn synthetic(n: usize) -> Foon {
    Foon::from_units((0..n).map(|i| {
        let input = ObjectNode::from_key(&format!("raw {i}||")).unwrap();
        let output = ObjectNode::from_key(&format!("item {i}|done|")).unwrap();
        FunctionalUnit::new(vec![input], MotionLabel::new("mix").unwrap(), vec![output]).unwrap()
    }))
}

/// Best-of-several mean time per probe, in nanoseconds.
fn probe_ns(foon: &Foon, keys: &[String]) -> f64 {
    let rounds = 20;
    let mut best = f64::INFINITY;
    for _ in 0..7 {
        let start = Instant::now();
        for _ in 0..rounds {
            for k in keys {
                black_box(foon.candidate_units(black_box(k)));
            }
        }
        let ns = start.elapsed().as_nanos() as f64 / (rounds * keys.len()) as f64;
        best = best.min(ns);
    }
    best
}

fn probe_keys(n: usize) -> Vec<String> {
    // fixed stride through the graph, plus misses
    (0..5000)
        .map(|j| {
            if j % 10 == 0 {
                format!("absent {j}||")
            } else {
                format!("item {}|done|", (j * 7919) % n)
            }
        })
        .collect()
}

fn candidate_latency() -> Outcome {
    let small = synthetic(100);
    let large = synthetic(10_000);
    ensure!(small.len() == 100 && large.len() == 10_000, "synthetic graph sizes");
    let a = probe_ns(&small, &probe_keys(100));
    let b = probe_ns(&large, &probe_keys(10_000));
    let ratio = b / a;
    ensure!(ratio <= 2.0, "{a:.0} ns vs {b:.0} ns per probe, ratio {ratio:.2}");
    Ok(format!("{a:.0} ns vs {b:.0} ns per probe, ratio {ratio:.2}"))
}

struct Report {
    failed: usize,
}

impl Report {
    fn check(&mut self, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(detail), Some(b)) if elapsed > b => Err(format!("{detail}; took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL  {name}: {detail} [{elapsed:.2?}]");
            }
        }
    }
}

fn main() -> ExitCode {
    let corpus = load();
    let c = &corpus;
    let mut report = Report { failed: 0 };
    report.check("gbfs-h1 picks mix over stir", Some(Duration::from_secs(1)), || mix_over_stir(c));
    report.check("gbfs-h2 picks the 3-input scrambled egg unit", None, || three_inputs_over_four(c));
    report.check("motion rate table parses to the 7 printed rates", None, || rate_table(c));
    report.check(
        "substitute suite: validity, valid-set membership, dominance, minimal IDS depth",
        Some(Duration::from_secs(10)),
        || substitute_suite(c),
    );
    report.check("single-unit ice recipe is 1 unit for every algorithm", None, || ice(c));
    report.check("10 repeated retrieve runs are byte-identical", None, || determinism(c));
    report.check("merge(F, F) = F and merge(F, empty) = F", None, || merge_algebra(c));
    report.check("parse, serialize, parse is identity", None, round_trip);
    report.check(
        "candidate lookup latency flat from 10^2 to 10^4 units",
        Some(Duration::from_secs(30)),
        candidate_latency,
    );
    println!("{} failed", report.failed);
    if report.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
