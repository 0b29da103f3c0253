//! From doubling sets to paradoxical decompositions: bipartite graph, Hall
//! harem matching, 2-to-1 map, decomposition, and the measure contradiction.

mod decomposition;
mod flow;
mod harem;

use thiserror::Error;

use crate::space::SpaceError;

pub use decomposition::{
    canonical_free_decomposition, decomposition_from_map, tarski_contradiction,
    two_to_one_from_matching, verify_decomposition, Decomposition, DecompositionReport, TwoToOneMap,
};
pub use harem::{build_graph, harem_matching, verify_matching, BipartiteGraph, HaremOutcome, Matching};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParadoxError {
    #[error("k must be positive here (got {0}); 2-to-1 maps need k = 2")]
    BadK(usize),
    #[error("window does not certify the graph: {0}")]
    Uncertified(String),
    #[error("matching is not perfect on the interior; unmatched: {}", .0.join(", "))]
    NotPerfect(Vec<String>),
    #[error("no coset in E realises the section at {0}")]
    MissingCoset(String),
    #[error("measure universe differs from the decomposition core")]
    ScopeMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}
