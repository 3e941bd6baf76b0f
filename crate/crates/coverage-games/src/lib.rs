//! Two-player multi-agent coverage games with Büchi and co-Büchi objectives.
//!
//! A coverage game pits Coverer, who operates `k` agents from a shared
//! initial vertex, against Disruptor, who answers every agent with one
//! strategy. Coverer wins if each objective in an ordered list is satisfied
//! by at least one agent's play; Disruptor wins if she can prevent that
//! against every agent vector. The two problems do not complement each other:
//! such games can be undetermined.
//!
//! The crate provides:
//!
//! - the data model with JSON and DOT interchange ([`game`], [`io`]),
//! - classic two-player sub-solvers: attractors, Büchi, co-Büchi,
//!   All-Büchi with winning cages, Exists-co-Büchi ([`solvers`]),
//! - the coverage decision procedure with structured strategy synthesis and
//!   an independent strategy verifier ([`coverage`]),
//! - the disruption decision procedures: memoryless enumeration for Büchi,
//!   fairness-pair enumeration for co-Büchi, and the fixed-objective-count
//!   Δ-iteration used for cross-checking ([`disruption`]),
//! - specialized one-player procedures ([`one_player`]),
//! - labeled hard-instance generators from vertex cover, 3SAT, QBF and 2QBF,
//!   with brute-force oracles ([`reductions`]),
//! - exhaustive reference evaluators for desk-scale validation
//!   ([`exhaustive`]).
//!
//! Every solver is deterministic: ties break toward the lowest vertex index,
//! and enumerations scan candidates in a canonical order. See the crate's
//! `examples/` directory for runnable walkthroughs of each capability.

pub mod bitset;
pub mod coverage;
pub mod disruption;
pub mod exhaustive;
pub mod game;
pub mod io;
pub mod one_player;
pub mod reductions;
pub mod solvers;

pub use bitset::{ObjectiveIndexSet, VertexSet};
pub use game::{
    validate, CoverageGame, GameGraph, GraphError, LassoPath, Objective, ObjectiveKind, Player,
    Violation,
};
pub use solvers::MemorylessStrategy;
