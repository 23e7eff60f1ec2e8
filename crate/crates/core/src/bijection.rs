//! Bijection between relaxed binary trees of right height at most one and
//! plane increasing trees, and the pointer-path view shared by both sides.
//!
//! Both directions are phrased over a [`PointerAssignment`]: after moving each
//! cherry's left pointer onto its branch node, every internal node carries
//! exactly one pointer. A pointer leaving level 0 is a *parent* pointer and
//! becomes a first-child attachment; a pointer leaving level 1 is a *sibling*
//! pointer and becomes an immediate-right-sibling attachment.

use serde::{Deserialize, Serialize};

use crate::trees::{roles_unchecked, validate_relaxed, PlaneIncreasingTree, RelaxedTree, Slot, TreeError, LEAF};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointerKind {
    #[serde(rename = "P")]
    Parent,
    #[serde(rename = "S")]
    Sibling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pointer {
    pub target: usize,
    pub kind: PointerKind,
}

/// One pointer per inorder label `1..=n`; every target is a smaller label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointerAssignment {
    pointers: Vec<Pointer>,
}

#[derive(Debug, thiserror::Error)]
pub enum AssignmentError {
    #[error("pointer of {source_label} targets {target}, which is not smaller")]
    NotDecreasing { source_label: usize, target: usize },
    #[error("sibling pointer of {source_label} targets the root")]
    SiblingToRoot { source_label: usize },
}

impl PointerAssignment {
    /// `pointers[i - 1]` is the pointer of label `i`.
    pub fn new(pointers: Vec<Pointer>) -> Result<Self, AssignmentError> {
        for (idx, p) in pointers.iter().enumerate() {
            let label = idx + 1;
            if p.target >= label {
                return Err(AssignmentError::NotDecreasing { source_label: label, target: p.target });
            }
            if p.kind == PointerKind::Sibling && p.target == 0 {
                return Err(AssignmentError::SiblingToRoot { source_label: label });
            }
        }
        Ok(Self { pointers })
    }

    pub fn size(&self) -> usize {
        self.pointers.len()
    }

    pub fn get(&self, label: usize) -> Pointer {
        self.pointers[label - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Pointer)> + '_ {
        self.pointers.iter().enumerate().map(|(i, &p)| (i + 1, p))
    }

    /// Pointer-path length of every label: the number of parent pointers on
    /// the walk to label 0. Equals node depth in the increasing tree.
    pub fn path_lengths(&self) -> Vec<usize> {
        let mut len = vec![0; self.size() + 1];
        for (label, p) in self.iter() {
            len[label] = len[p.target] + usize::from(p.kind == PointerKind::Parent);
        }
        len
    }

    /// Parent of every label in the increasing tree: the target of the first
    /// parent pointer on its pointer-path. Index 0 maps to itself.
    pub fn parents(&self) -> Vec<usize> {
        let mut parent = vec![0; self.size() + 1];
        for (label, p) in self.iter() {
            parent[label] = match p.kind {
                PointerKind::Parent => p.target,
                PointerKind::Sibling => parent[p.target],
            };
        }
        parent
    }

    /// Number of incoming parent pointers of every label.
    pub fn parent_indegrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.size() + 1];
        for (_, p) in self.iter() {
            if p.kind == PointerKind::Parent {
                deg[p.target] += 1;
            }
        }
        deg
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry {
            src: usize,
            dst: usize,
            kind: PointerKind,
        }
        #[derive(Serialize)]
        struct Doc {
            ptr: Vec<Entry>,
        }
        let ptr = self.iter().map(|(src, p)| Entry { src, dst: p.target, kind: p.kind }).collect();
        serde_json::to_string(&Doc { ptr }).expect("serializable")
    }
}

/// Moves each cherry's left pointer onto its branch node, redirects level-1
/// pointers aimed at the leaf to the branch node, and classifies pointers by
/// the level of their source.
pub fn normalize_pointers(t: &RelaxedTree) -> Result<PointerAssignment, TreeError> {
    let violations = validate_relaxed(t);
    if !violations.is_empty() {
        return Err(TreeError::InvalidRelaxed(violations));
    }
    Ok(normalize_valid(t))
}

fn normalize_valid(t: &RelaxedTree) -> PointerAssignment {
    let n = t.size();
    let roles = roles_unchecked(t);
    let mut id_of = vec![0; n + 1];
    for (id, r) in roles.iter().enumerate() {
        id_of[r.inorder_label] = id;
    }
    let label = |id: usize| roles[id].inorder_label;
    let mut pointers = vec![Pointer { target: 0, kind: PointerKind::Parent }; n];
    let mut branch_node = LEAF;
    for lab in 1..=n {
        let id = id_of[lab];
        let role = roles[id];
        let (left, right) = (t.left(id), t.right(id));
        pointers[lab - 1] = if role.level == 0 {
            if role.is_branch_node {
                branch_node = lab;
                // the cherry sits right after its branch node in inorder
                let cherry = id_of[lab + 1];
                Pointer { target: label(t.left(cherry).target()), kind: PointerKind::Parent }
            } else {
                debug_assert!(matches!(left, Slot::Edge(_)));
                Pointer { target: label(right.target()), kind: PointerKind::Parent }
            }
        } else {
            let target = match label(right.target()) {
                0 => branch_node,
                other => other,
            };
            Pointer { target, kind: PointerKind::Sibling }
        };
    }
    PointerAssignment { pointers }
}

/// Builds the increasing tree described by a pointer assignment: parent
/// pointers attach as first child, sibling pointers as immediate right sibling.
pub fn assignment_to_increasing(a: &PointerAssignment) -> PlaneIncreasingTree {
    let total = a.size() + 1;
    let mut first_child = vec![NONE; total];
    let mut next_sibling = vec![NONE; total];
    for (label, p) in a.iter() {
        match p.kind {
            PointerKind::Parent => {
                next_sibling[label] = first_child[p.target];
                first_child[p.target] = label;
            }
            PointerKind::Sibling => {
                next_sibling[label] = next_sibling[p.target];
                next_sibling[p.target] = label;
            }
        }
    }
    PlaneIncreasingTree::from_links(&first_child, &next_sibling)
}

/// Relaxed tree to plane increasing tree.
pub fn relaxed_to_increasing(t: &RelaxedTree) -> Result<PlaneIncreasingTree, TreeError> {
    Ok(assignment_to_increasing(&normalize_pointers(t)?))
}

/// The pointer assignment read off an increasing tree: label `k` gets a parent
/// pointer to its parent if it was inserted as a maximal young leaf, and
/// otherwise a sibling pointer to its left sibling among labels `< k`.
pub fn increasing_to_assignment(t: &PlaneIncreasingTree) -> PointerAssignment {
    let left = t.prefix_left_siblings();
    let pointers = (1..t.node_count())
        .map(|k| match left[k] {
            None => Pointer { target: t.parent(k).expect("non-root"), kind: PointerKind::Parent },
            Some(s) => Pointer { target: s, kind: PointerKind::Sibling },
        })
        .collect();
    PointerAssignment { pointers }
}

/// Plane increasing tree to relaxed tree; node ids are inorder labels.
pub fn increasing_to_relaxed(t: &PlaneIncreasingTree) -> RelaxedTree {
    let mut builder = RelaxedBuilder::new(t.size());
    for (_, p) in increasing_to_assignment(t).iter() {
        match p.kind {
            PointerKind::Parent => builder.push_level0(p.target),
            PointerKind::Sibling => builder.push_branch(p.target),
        }
    }
    builder.finish()
}

/// Incremental construction of a relaxed tree by attaching new roots, either
/// on level 0 or on top of the pending branch.
#[derive(Debug)]
pub(crate) struct RelaxedBuilder {
    slots: Vec<[Slot; 2]>,
    root: usize,
    branch_top: usize,
    branch_bottom: usize,
}

impl RelaxedBuilder {
    pub(crate) fn new(capacity: usize) -> Self {
        Self { slots: Vec::with_capacity(capacity), root: LEAF, branch_top: NONE, branch_bottom: NONE }
    }

    pub(crate) fn len(&self) -> usize {
        self.slots.len()
    }

    // Hang the pending branch below the current root; the root's pointer
    // becomes the left pointer of the branch's first node (its cherry).
    fn flush(&mut self) {
        if self.branch_top == NONE {
            return;
        }
        let root = self.root;
        let moved = self.slots[root - 1][1];
        self.slots[root - 1][1] = Slot::Edge(self.branch_top);
        self.slots[self.branch_bottom - 1][0] = moved;
        self.branch_top = NONE;
        self.branch_bottom = NONE;
    }

    /// New level-0 root whose pointer targets `target`.
    pub(crate) fn push_level0(&mut self, target: usize) {
        self.flush();
        let label = self.slots.len() + 1;
        self.slots.push([Slot::Edge(self.root), Slot::Ptr(target)]);
        self.root = label;
    }

    /// New root of the pending branch whose sibling pointer targets `target`;
    /// a pointer to the current level-0 root is stored as a pointer to the leaf.
    pub(crate) fn push_branch(&mut self, target: usize) {
        let label = self.slots.len() + 1;
        let stored = if target == self.root { LEAF } else { target };
        let left = if self.branch_top == NONE {
            self.branch_bottom = label;
            // placeholder, replaced on flush
            Slot::Ptr(LEAF)
        } else {
            Slot::Edge(self.branch_top)
        };
        self.slots.push([left, Slot::Ptr(stored)]);
        self.branch_top = label;
    }

    pub(crate) fn finish(mut self) -> RelaxedTree {
        self.flush();
        RelaxedTree::from_slots(self.slots)
    }
}

/// A pointer-path from a label to label 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointerPath {
    /// Labels visited, starting at the source and ending at 0.
    pub nodes: Vec<usize>,
    /// Kind of each step (`nodes.len() - 1` entries).
    pub steps: Vec<PointerKind>,
    /// Number of parent pointers followed.
    pub length: usize,
}

impl std::fmt::Display for PointerPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.nodes[0])?;
        for (node, kind) in self.nodes[1..].iter().zip(&self.steps) {
            let arrow = match kind {
                PointerKind::Parent => " -> ",
                PointerKind::Sibling => " - ",
            };
            write!(f, "{arrow}{node}")?;
        }
        Ok(())
    }
}

/// Follows pointers from `source` to label 0.
///
/// # Panics
/// If `source` is outside `0..=n`.
pub fn pointer_path(a: &PointerAssignment, source: usize) -> PointerPath {
    assert!(source <= a.size(), "source {source} outside 0..={}", a.size());
    let mut nodes = vec![source];
    let mut steps = Vec::new();
    let mut at = source;
    while at != 0 {
        let p = a.get(at);
        steps.push(p.kind);
        nodes.push(p.target);
        at = p.target;
    }
    let length = steps.iter().filter(|&&k| k == PointerKind::Parent).count();
    PointerPath { nodes, steps, length }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use PointerKind::{Parent as P, Sibling as S};

    /// The eleven-node running example, given by its pointer table.
    pub(crate) fn running_example() -> PointerAssignment {
        let table = [
            (0, P),
            (1, P),
            (1, P),
            (1, S),
            (0, P),
            (5, P),
            (2, P),
            (7, S),
            (5, S),
            (2, P),
            (6, S),
        ];
        PointerAssignment::new(table.iter().map(|&(target, kind)| Pointer { target, kind }).collect()).unwrap()
    }
}
