//! Readers and writers for the on-disk formats: subgraph files, kitchen
//! documents, motion success-rate tables and substitution maps.

mod kitchen;
mod motions;
mod subgraph;
mod substitutions;

pub use kitchen::parse_kitchen;
pub use motions::{parse_motions, MotionSuccessTable};
pub use subgraph::{parse_subgraph, serialize_subgraph};
pub use substitutions::parse_substitutions;
