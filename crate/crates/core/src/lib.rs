//! Functional object-oriented networks (FOON): a bipartite knowledge graph
//! of objects and the manipulations that transform them.
//!
//! The crate loads subgraph files into a deduplicated universal graph and
//! retrieves task trees for a goal object given what the kitchen holds,
//! using iterative deepening or greedy best-first search.

pub mod error;
pub mod graph;
pub mod node;
pub mod parser;
pub mod retrieval;

pub use error::{NodeError, ParseError, RetrievalError};
pub use graph::{Foon, KitchenState};
pub use node::{object_key, CanonicalForm, FunctionalUnit, MotionLabel, ObjectNode};
pub use parser::{
    parse_kitchen, parse_motions, parse_subgraph, parse_substitutions, serialize_subgraph,
    MotionSuccessTable,
};
pub use retrieval::{
    gbfs_retrieve, ids_retrieve, is_available, validate_tree, Algorithm, Availability, Heuristic,
    Retrieval, RetrievalStats, SubstitutionMap, TaskTree, Verdict,
};
