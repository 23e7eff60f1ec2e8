//! Plane increasing trees, relaxed binary trees, and their documents.

mod code;
mod increasing;
mod json;
mod relaxed;

use thiserror::Error;

pub use code::{decode, encode, InsertionCode};
pub use increasing::PlaneIncreasingTree;
pub use json::{parse, AnyTree};
pub use relaxed::{roles, validate_relaxed, NodeRole, RelaxedTree, Slot, Violation, LEAF};

pub(crate) use relaxed::roles_unchecked;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("malformed insertion code: step {step} has position {position}, bound is {bound}")]
    MalformedCode { step: usize, position: usize, bound: usize },
    #[error("invalid increasing tree: {0}")]
    Invalid(String),
    #[error("invalid relaxed tree: {}", join(.0))]
    InvalidRelaxed(Vec<Violation>),
    #[error("parse error: {0}")]
    Parse(String),
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
