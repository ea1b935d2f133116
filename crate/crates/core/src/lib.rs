//! Multi-level decomposition of hypergraphs into pairwise graphs, pattern
//! statistics over the decomposed graphs, hypergraph generators, generator
//! scoring, and exact recovery from weighted decompositions.

pub mod analysis;
pub mod decompose;
pub mod error;
pub mod evaluate;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod metrics;
pub mod recovery;
pub mod tailfit;

pub use decompose::{
    decompose, decompose_all, decompose_weighted, DecomposeConfig, DecomposedGraph, LevelCaps,
    WeightedDecomposedGraph,
};
pub use error::{Error, Result};
pub use hypergraph::{
    canonicalize, canonicalize_timed, dedup, CanonicalizeOptions, Hyperedge, Hypergraph, KSubset,
    NodeId,
};
pub use analysis::{analyze, AnalysisConfig, LevelReport, DEFAULT_LEVELS};
pub use evaluate::{evaluate, Pattern, PatternScore, ScoreCard};
pub use recovery::{recover, RecoverOptions};
