//! Weighted safe sets of graphs.
//!
//! Exact (rational) solvers for the weighted safe number `s(G, w)` and the
//! connected weighted safe number `cs(G, w)`, a linear-time solver for
//! cycles, generators for weighted paths whose minimum safe sets have many
//! components, and the subgraph component polynomial together with the
//! complete-or-cycle classifier built on it.

pub mod constructions;
mod engine;
pub mod error;
pub mod fastpaths;
pub mod graph;
pub mod io;
pub mod par;
pub mod polytool;
pub mod random;
pub mod rational;
pub mod safe;

pub use error::{Error, Result};
pub use graph::{components, edge_between, subset_weight, ComponentList, Graph, VertexSubset, WeightedGraph};
pub use par::Execution;
pub use rational::Weight;
pub use safe::{SafeSetSolution, SolverConfig};
