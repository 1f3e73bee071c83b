//! Exact domination solvers, graph transformations and a verification
//! harness for cubic graphs.

pub mod bitset;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod machinery;
pub mod solvers;
pub mod structure;
