use std::fmt;

use serde::{Deserialize, Serialize};

use super::TreeError;

/// Id of the unique leaf.
pub const LEAF: usize = 0;

/// Content of a left or right slot of an internal node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Slot {
    /// Internal edge to a child (internal node or the leaf).
    Edge(usize),
    /// Pointer edge to an arbitrary node.
    Ptr(usize),
}

impl Slot {
    pub fn target(self) -> usize {
        match self {
            Slot::Edge(t) | Slot::Ptr(t) => t,
        }
    }

    pub fn is_ptr(self) -> bool {
        matches!(self, Slot::Ptr(_))
    }
}

/// A relaxed binary tree: `n` internal nodes with ids `1..=n`, one leaf with
/// id [`LEAF`], `n` internal edges and `n` pointer edges.
///
/// The type stores arbitrary slot contents; [`validate_relaxed`] reports
/// which structural invariants hold. Trees produced by this crate use inorder
/// labels as ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelaxedTree {
    slots: Vec<[Slot; 2]>,
}

impl RelaxedTree {
    /// The tree consisting of the leaf only.
    pub fn leaf_only() -> Self {
        Self { slots: Vec::new() }
    }

    /// `slots[i - 1]` holds the (left, right) slots of node `i`.
    pub fn from_slots(slots: Vec<[Slot; 2]>) -> Self {
        Self { slots }
    }

    pub fn size(&self) -> usize {
        self.slots.len()
    }

    pub fn left(&self, id: usize) -> Slot {
        self.slots[id - 1][0]
    }

    pub fn right(&self, id: usize) -> Slot {
        self.slots[id - 1][1]
    }

    pub fn slots(&self) -> &[[Slot; 2]] {
        &self.slots
    }

    /// The internal node without an incoming internal edge, if unique.
    pub fn root(&self) -> Option<usize> {
        if self.slots.is_empty() {
            return Some(LEAF);
        }
        let mut has_parent = vec![false; self.size() + 1];
        for pair in &self.slots {
            for slot in pair {
                if let Slot::Edge(t) = *slot {
                    if t < has_parent.len() {
                        has_parent[t] = true;
                    }
                }
            }
        }
        let mut roots = (1..=self.size()).filter(|&v| !has_parent[v]);
        let root = roots.next()?;
        roots.next().is_none().then_some(root)
    }

    /// Relabels nodes by inorder position so that ids equal inorder labels.
    pub fn canonical(&self) -> Result<Self, TreeError> {
        let roles = roles(self)?;
        let label = |id: usize| roles[id].inorder_label;
        let mut slots = vec![[Slot::Ptr(0); 2]; self.size()];
        for id in 1..=self.size() {
            let map = |s: Slot| match s {
                Slot::Edge(t) => Slot::Edge(label(t)),
                Slot::Ptr(t) => Slot::Ptr(label(t)),
            };
            slots[label(id) - 1] = [map(self.left(id)), map(self.right(id))];
        }
        Ok(Self { slots })
    }
}

impl fmt::Debug for RelaxedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RelaxedTree")?;
        f.debug_map()
            .entries(self.slots.iter().enumerate().map(|(i, s)| (i + 1, s)))
            .finish()
    }
}

/// A failed structural invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A slot names a node id outside `0..=n`.
    TargetOutOfRange { node: usize, target: usize },
    /// Internal and pointer edge counts differ from the size.
    EdgeCount { internal: usize, pointers: usize, size: usize },
    /// The internal-edge graph is not a binary tree rooted at an internal node.
    NotATree { node: usize, reason: &'static str },
    /// A pointer targets a node that is not visited before it in postorder.
    Postorder { node: usize, target: usize },
    /// A root-to-leaf path uses two or more right internal edges.
    RightHeight { node: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TargetOutOfRange { node, target } => {
                write!(f, "node {node}: slot target {target} out of range")
            }
            Violation::EdgeCount { internal, pointers, size } => {
                write!(f, "{internal} internal edges and {pointers} pointers for size {size}")
            }
            Violation::NotATree { node, reason } => write!(f, "node {node}: {reason}"),
            Violation::Postorder { node, target } => {
                write!(f, "node {node}: pointer to {target} does not precede it in postorder")
            }
            Violation::RightHeight { node } => write!(f, "node {node}: right height exceeds one"),
        }
    }
}

/// Reports every violated invariant; an empty list means the tree is a valid
/// relaxed binary tree of right height at most one.
pub fn validate_relaxed(t: &RelaxedTree) -> Vec<Violation> {
    let n = t.size();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut internal = 0;
    let mut pointers = 0;
    let mut range_ok = true;
    for id in 1..=n {
        for slot in [t.left(id), t.right(id)] {
            if slot.target() > n {
                out.push(Violation::TargetOutOfRange { node: id, target: slot.target() });
                range_ok = false;
            }
            match slot {
                Slot::Edge(_) => internal += 1,
                Slot::Ptr(_) => pointers += 1,
            }
        }
    }
    if internal != n || pointers != n {
        out.push(Violation::EdgeCount { internal, pointers, size: n });
    }
    if !range_ok {
        return out;
    }

    let mut in_edges = vec![0usize; n + 1];
    for id in 1..=n {
        for slot in [t.left(id), t.right(id)] {
            if let Slot::Edge(c) = slot {
                in_edges[c] += 1;
            }
        }
    }
    let mut tree_ok = true;
    if in_edges[LEAF] != 1 {
        out.push(Violation::NotATree { node: LEAF, reason: "leaf must have exactly one parent" });
        tree_ok = false;
    }
    let roots: Vec<usize> = (1..=n).filter(|&v| in_edges[v] == 0).collect();
    if roots.len() != 1 {
        out.push(Violation::NotATree { node: roots.first().copied().unwrap_or(1), reason: "expected exactly one root" });
        tree_ok = false;
    }
    for v in 1..=n {
        if in_edges[v] > 1 {
            out.push(Violation::NotATree { node: v, reason: "more than one incoming internal edge" });
            tree_ok = false;
        }
    }
    if !tree_ok {
        return out;
    }

    // Walk the internal-edge tree in postorder. Each pointer is checked when
    // its slot is reached: the target must have been completed already.
    let root = roots[0];
    let mut done = vec![false; n + 1];
    let mut reached = 0usize;
    let mut stack = vec![Frame { node: root, level: 0, state: 0 }];
    while let Some(frame) = stack.last_mut() {
        let node = frame.node;
        if node == LEAF {
            done[LEAF] = true;
            reached += 1;
            stack.pop();
            continue;
        }
        if frame.state == 2 {
            done[node] = true;
            reached += 1;
            stack.pop();
            continue;
        }
        let side = frame.state;
        frame.state += 1;
        let level = frame.level;
        match if side == 0 { t.left(node) } else { t.right(node) } {
            Slot::Ptr(target) => {
                if !done[target] {
                    out.push(Violation::Postorder { node, target });
                }
            }
            Slot::Edge(child) => {
                let child_level = level + side;
                if side == 1 && child_level == 2 {
                    out.push(Violation::RightHeight { node });
                }
                stack.push(Frame { node: child, level: child_level, state: 0 });
            }
        }
    }
    if reached != n + 1 {
        out.push(Violation::NotATree { node: root, reason: "internal edges do not reach every node" });
    }
    out
}

struct Frame {
    node: usize,
    level: usize,
    state: usize,
}

/// Structural role of a node in a valid relaxed tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeRole {
    pub level: usize,
    pub is_branch_node: bool,
    pub is_cherry: bool,
    pub inorder_label: usize,
}

/// Roles indexed by node id (the leaf is index 0).
pub fn roles(t: &RelaxedTree) -> Result<Vec<NodeRole>, TreeError> {
    let violations = validate_relaxed(t);
    if !violations.is_empty() {
        return Err(TreeError::InvalidRelaxed(violations));
    }
    Ok(roles_unchecked(t))
}

pub(crate) fn roles_unchecked(t: &RelaxedTree) -> Vec<NodeRole> {
    let n = t.size();
    let mut out = vec![
        NodeRole { level: 0, is_branch_node: false, is_cherry: false, inorder_label: 0 };
        n + 1
    ];
    if n == 0 {
        return out;
    }
    let root = t.root().expect("validated");
    let mut next = 0;
    // iterative inorder: (node, level, left_done)
    let mut stack: Vec<(usize, usize, bool)> = vec![(root, 0, false)];
    while let Some((node, level, left_done)) = stack.pop() {
        if node == LEAF {
            out[LEAF].inorder_label = next;
            next += 1;
            continue;
        }
        if !left_done {
            stack.push((node, level, true));
            if let Slot::Edge(c) = t.left(node) {
                stack.push((c, level, false));
            }
            continue;
        }
        let (l, r) = (t.left(node), t.right(node));
        out[node] = NodeRole {
            level,
            is_branch_node: level == 0 && matches!(r, Slot::Edge(_)),
            is_cherry: l.is_ptr() && r.is_ptr(),
            inorder_label: next,
        };
        next += 1;
        if let Slot::Edge(c) = r {
            stack.push((c, level + 1, false));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Slot::{Edge, Ptr};

    #[test]
    fn size_one_pointer_to_leaf_is_valid() {
        let t = RelaxedTree::from_slots(vec![[Edge(0), Ptr(0)]]);
        assert!(validate_relaxed(&t).is_empty());
    }

    #[test]
    fn self_pointer_violates_postorder() {
        let t = RelaxedTree::from_slots(vec![[Edge(0), Ptr(1)]]);
        assert_eq!(validate_relaxed(&t), vec![Violation::Postorder { node: 1, target: 1 }]);
    }

    #[test]
    fn two_right_edges_violate_right_height() {
        // 1 is root with right edge to 2, 2 has right edge to 3, 3 a cherry.
        // Leaf under 1 on the left.
        let t = RelaxedTree::from_slots(vec![
            [Edge(0), Edge(2)],
            [Ptr(0), Edge(3)],
            [Ptr(0), Ptr(0)],
        ]);
        let v = validate_relaxed(&t);
        assert_eq!(v, vec![Violation::RightHeight { node: 2 }]);
    }

    #[test]
    fn miscounted_pointers() {
        let t = RelaxedTree::from_slots(vec![[Edge(0), Edge(0)]]);
        let v = validate_relaxed(&t);
        assert!(v.contains(&Violation::EdgeCount { internal: 2, pointers: 0, size: 1 }));
    }

    #[test]
    fn leaf_not_leftmost_fails_postorder() {
        // root 1: left is a pointer, right is an edge to 2 whose left is the leaf
        let t = RelaxedTree::from_slots(vec![[Ptr(0), Edge(2)], [Edge(0), Ptr(0)]]);
        assert!(validate_relaxed(&t).iter().any(|v| matches!(v, Violation::Postorder { node: 1, .. })));
    }

    #[test]
    fn roles_of_branch_tree() {
        // root 1 (branch node): left edge to leaf, right edge to cherry 2
        let t = RelaxedTree::from_slots(vec![[Edge(0), Edge(2)], [Ptr(0), Ptr(0)]]);
        let r = roles(&t).unwrap();
        assert_eq!(r[0].inorder_label, 0);
        assert_eq!(r[1], NodeRole { level: 0, is_branch_node: true, is_cherry: false, inorder_label: 1 });
        assert_eq!(r[2], NodeRole { level: 1, is_branch_node: false, is_cherry: true, inorder_label: 2 });
    }

    #[test]
    fn canonical_relabels_by_inorder() {
        // same tree as above with the two ids swapped
        let t = RelaxedTree::from_slots(vec![[Ptr(0), Ptr(0)], [Edge(0), Edge(1)]]);
        let c = t.canonical().unwrap();
        assert_eq!(c, RelaxedTree::from_slots(vec![[Edge(0), Edge(2)], [Ptr(0), Ptr(0)]]));
    }
}
