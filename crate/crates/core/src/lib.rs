//! Exact combinatorics of relaxed binary trees of right height at most one
//! and plane increasing trees: the bijection between the two families,
//! exhaustive enumeration, uniform sampling, parameter statistics, structural
//! subclasses, and an exact power-series engine for their counting sequences.

pub mod bijection;
pub mod enumerate;
pub mod sample;
pub mod series;
pub mod stats;
pub mod subclass;
pub mod trees;

pub use bijection::{increasing_to_relaxed, relaxed_to_increasing};
pub use trees::{PlaneIncreasingTree, RelaxedTree};
