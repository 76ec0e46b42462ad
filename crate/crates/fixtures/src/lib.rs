//! Bundled mini-FOON corpus and its brute-force manifest.
//!
//! The manifest is produced by [`generate_manifest`], which carries its own
//! line reader, key canonicalization, enumeration and executability check.
//! Nothing here depends on the library it is used to test.

use std::path::{Path, PathBuf};

mod manifest;
mod oracle;

pub use manifest::{Fork, Manifest, ManifestError, PolicyTree};
pub use oracle::{generate_manifest, OracleError, MAX_COMBINATIONS};

/// Subgraph files that make up the universal fixture FOON, in merge order.
pub const UNIVERSE_FILES: [&str; 3] = ["breakfast.foon", "desserts_a.foon", "desserts_b.foon"];
pub const KITCHEN_FILE: &str = "kitchen.json";
pub const MOTIONS_FILE: &str = "motions.txt";
pub const SUBSTITUTIONS_FILE: &str = "substitutions.txt";
pub const GOALS_FILE: &str = "goals.txt";
pub const MANIFEST_FILE: &str = "manifest.csv";

/// Goal keys named in the documented forks.
pub const ICE_GOAL: &str = "ice|cube|";
pub const SCRAMBLED_EGG_GOAL: &str = "scrambled egg|cooked|";
pub const WHIPPED_CREAM_GOAL: &str = "whipped cream|whipped|";
pub const DIAMOND_GOAL: &str = "omelette|cooked|";

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_file(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub fn universe_paths() -> Vec<PathBuf> {
    UNIVERSE_FILES.iter().map(|f| corpus_file(f)).collect()
}

/// Loads the committed manifest.
pub fn committed_manifest() -> Result<Manifest, ManifestError> {
    let text = std::fs::read_to_string(corpus_file(MANIFEST_FILE))?;
    Manifest::from_csv(&text)
}
