//! Structural subclasses of relaxed trees and their membership predicates.
//!
//! A relaxed tree decomposes along its level-0 spine (root to leaf) into an
//! initial run of plain nodes, branch nodes separated by gaps of plain nodes,
//! and a final run ending at the leaf. Each branch node carries a level-1
//! branch ending in a cherry. Subclasses forbid some of these runs, force
//! single-node branches, or force both cherry pointers onto one target.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bijection::increasing_to_relaxed;
use crate::enumerate::{enumerate_increasing, partition, Codes, EnumerateError, SizeGuard};
use crate::series::{CherryPointers, ClassSpec};
use crate::trees::{decode, validate_relaxed, PlaneIncreasingTree, RelaxedTree, Slot, TreeError, LEAF};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubclassId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
}

impl SubclassId {
    /// Every subclass, `R1..R10` then the one-pointer rows `T1..T12`.
    pub const ALL: [SubclassId; 22] = {
        use SubclassId::*;
        [R1, R2, R3, R4, R5, R6, R7, R8, R9, R10, T1, T2, T3, T4, T5, T6, T7, T8, T9, T10, T11, T12]
    };

    pub fn name(self) -> &'static str {
        use SubclassId::*;
        match self {
            R1 => "R1",
            R2 => "R2",
            R3 => "R3",
            R4 => "R4",
            R5 => "R5",
            R6 => "R6",
            R7 => "R7",
            R8 => "R8",
            R9 => "R9",
            R10 => "R10",
            T1 => "T1",
            T2 => "T2",
            T3 => "T3",
            T4 => "T4",
            T5 => "T5",
            T6 => "T6",
            T7 => "T7",
            T8 => "T8",
            T9 => "T9",
            T10 => "T10",
            T11 => "T11",
            T12 => "T12",
        }
    }

    pub fn description(self) -> &'static str {
        use SubclassId::*;
        match self {
            R1 => "no initial sequence",
            R2 => "no final sequence",
            R3 => "no initial and no final sequence",
            R4 => "no sequences on level 1",
            R5 => "no sequences on level 0",
            R6 => "no sequences on levels 0 and 1",
            R7 => "no sequences on levels 0 and 1, initial sequence allowed",
            R8 => "no sequences on levels 0 and 1, final sequence allowed",
            R9 => "no sequences on levels 0 and 1, initial and final sequences allowed",
            R10 => "one cherry pointer",
            T1 => "one cherry pointer",
            T2 => "one cherry pointer, no final sequence",
            T3 => "one cherry pointer, no initial sequence",
            T4 => "one cherry pointer, no sequence on level 0",
            T5 => "one cherry pointer, no sequence on level 1",
            T6 => "one cherry pointer, no sequence on level 1, no initial sequence",
            T7 => "one cherry pointer, no sequence on level 1, no final sequence",
            T8 => "one cherry pointer, no sequence on level 1, no initial and final sequence",
            T9 => "one cherry pointer, no sequences on levels 0 and 1",
            T10 => "one cherry pointer, no sequences on levels 0 and 1, initial sequence allowed",
            T11 => "one cherry pointer, no sequences on levels 0 and 1, final sequence allowed",
            T12 => "one cherry pointer, no sequences on levels 0 and 1, initial and final sequences allowed",
        }
    }
}

impl fmt::Display for SubclassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubclassId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown subclass id {s:?} (expected R1..R10 or T1..T12)"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SubclassError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("no increasing-tree characterization for {0}")]
    Unsupported(SubclassId),
}

/// Decomposition of a relaxed tree along its level-0 spine.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralProfile {
    /// Plain level-0 nodes between the root and the first branch node.
    pub initial_seq_len: usize,
    /// Plain level-0 nodes between the last branch node and the leaf; the
    /// whole spine when there is no branch node.
    pub final_seq_len: usize,
    /// Plain runs strictly between consecutive branch nodes, root side first.
    pub level0_gap_lens: Vec<usize>,
    /// Nodes per level-1 branch, root side first.
    pub branch_lens: Vec<usize>,
    /// Per cherry, whether both pointers share a target.
    pub cherry_ptr_equal: Vec<bool>,
    pub has_branch_node: bool,
}

impl StructuralProfile {
    pub fn level0_nodes(&self) -> usize {
        self.initial_seq_len + self.final_seq_len + self.level0_gap_lens.iter().sum::<usize>() + self.branch_lens.len()
    }

    /// Membership in the class described by `spec`.
    pub fn satisfies(&self, spec: &ClassSpec) -> bool {
        if !self.has_branch_node {
            return self.final_seq_len == 0 || spec.spine_only_allowed();
        }
        (spec.initial_sequence.allowed() || self.initial_seq_len == 0)
            && (spec.final_sequence.allowed() || self.final_seq_len == 0)
            && (spec.level0_gaps.allowed() || self.level0_gap_lens.iter().all(|&g| g == 0))
            && (spec.level1_sequences.allowed() || self.branch_lens.iter().all(|&b| b == 1))
            && (spec.cherry_pointers == CherryPointers::Two || self.cherry_ptr_equal.iter().all(|&e| e))
    }
}

/// Decomposes a valid relaxed tree.
pub fn profile(t: &RelaxedTree) -> Result<StructuralProfile, TreeError> {
    let violations = validate_relaxed(t);
    if !violations.is_empty() {
        return Err(TreeError::InvalidRelaxed(violations));
    }
    Ok(profile_unchecked(t))
}

fn profile_unchecked(t: &RelaxedTree) -> StructuralProfile {
    let mut p = StructuralProfile::default();
    let mut run = 0;
    let mut node = t.root().expect("valid tree");
    while node != LEAF {
        match t.right(node) {
            Slot::Edge(top) => {
                if p.has_branch_node {
                    p.level0_gap_lens.push(run);
                } else {
                    p.initial_seq_len = run;
                }
                p.has_branch_node = true;
                run = 0;
                let mut len = 1;
                let mut cur = top;
                while let Slot::Edge(next) = t.left(cur) {
                    cur = next;
                    len += 1;
                }
                p.branch_lens.push(len);
                p.cherry_ptr_equal.push(t.left(cur).target() == t.right(cur).target());
            }
            Slot::Ptr(_) => run += 1,
        }
        node = t.left(node).target();
    }
    p.final_seq_len = run;
    p
}

/// Whether `t` belongs to subclass `c`.
pub fn member(t: &RelaxedTree, c: SubclassId) -> Result<bool, TreeError> {
    Ok(profile(t)?.satisfies(&ClassSpec::of(c)))
}

/// Members of each of `classes` among relaxed trees of size `n`, counted over
/// the full enumeration in parallel.
pub fn count_members(n: usize, classes: &[SubclassId], guard: SizeGuard) -> Result<Vec<u64>, EnumerateError> {
    guard.check(n)?;
    let specs: Vec<ClassSpec> = classes.iter().map(|&c| ClassSpec::of(c)).collect();
    let parts = partition(n, rayon::current_num_threads() * 4);
    let counts = parts
        .into_par_iter()
        .map(|(a, b)| {
            let mut local = vec![0u64; specs.len()];
            for code in Codes::range(n, a, b) {
                let p = profile_unchecked(&increasing_to_relaxed(&decode(&code)));
                for (slot, spec) in local.iter_mut().zip(&specs) {
                    *slot += u64::from(p.satisfies(spec));
                }
            }
            local
        })
        .reduce(|| vec![0; specs.len()], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(counts)
}

/// Exhaustive member counts of `c` for sizes `0..=n_max`.
pub fn subclass_counts(c: SubclassId, n_max: usize, guard: SizeGuard) -> Result<Vec<BigInt>, EnumerateError> {
    (0..=n_max).map(|n| Ok(BigInt::from(count_members(n, &[c], guard)?[0]))).collect()
}

/// Characterization of a subclass through the growth history of the
/// corresponding increasing tree, where one is known.
pub fn increasing_predicate(c: SubclassId) -> Option<fn(&PlaneIncreasingTree) -> bool> {
    fn r1(t: &PlaneIncreasingTree) -> bool {
        let n = t.size();
        n == 0 || !t.maximal_young_insertions()[n]
    }
    fn r2(t: &PlaneIncreasingTree) -> bool {
        t.size() == 0
            || (t.size() >= 2
                && t.parent(2) == Some(0)
                && t.sibling_index(2) > t.sibling_index(1))
    }
    fn r4(t: &PlaneIncreasingTree) -> bool {
        let s = t.maximal_young_insertions();
        (1..t.size()).all(|k| s[k] || s[k + 1])
    }
    fn r5(t: &PlaneIncreasingTree) -> bool {
        let s = t.maximal_young_insertions();
        let n = t.size();
        (1..=n).all(|k| !s[k] || (k < n && !s[k + 1]))
    }
    fn r6(t: &PlaneIncreasingTree) -> bool {
        let s = t.maximal_young_insertions();
        t.size().is_multiple_of(2) && (1..=t.size()).all(|k| s[k] == (k % 2 == 1))
    }
    match c {
        SubclassId::R1 => Some(r1),
        SubclassId::R2 => Some(r2),
        SubclassId::R4 => Some(r4),
        SubclassId::R5 => Some(r5),
        SubclassId::R6 => Some(r6),
        _ => None,
    }
}

/// Outcome of comparing a structural class with its increasing-side
/// characterization at one size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideCheck {
    /// The bijective image of the characterized set equals the class.
    pub holds: bool,
    pub members: u64,
}

/// Checks that the bijection maps the increasing trees satisfying the
/// characterization of `c` exactly onto the members of `c`, at size `n`.
pub fn increasing_side_check(c: SubclassId, n: usize, guard: SizeGuard) -> Result<SideCheck, SubclassError> {
    let pred = increasing_predicate(c).ok_or(SubclassError::Unsupported(c))?;
    let spec = ClassSpec::of(c);
    let mut check = SideCheck { holds: true, members: 0 };
    for t in enumerate_increasing(n, guard)? {
        let structural = profile_unchecked(&increasing_to_relaxed(&t)).satisfies(&spec);
        check.holds &= structural == pred(&t);
        check.members += u64::from(structural);
    }
    Ok(check)
}
