use std::fmt;

use super::TreeError;

/// A rooted plane tree whose labels `0..=n` increase along every root-to-leaf
/// path. Node `0` is the root; the size is the number of non-root nodes.
///
/// Children are stored in compressed form (one offset table plus one flat
/// child array), so a tree of size `n` owns exactly three buffers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneIncreasingTree {
    offsets: Vec<usize>,
    kids: Vec<usize>,
    parent: Vec<usize>,
}

impl PlaneIncreasingTree {
    /// The tree consisting of the root only.
    pub fn root_only() -> Self {
        Self {
            offsets: vec![0, 0],
            kids: Vec::new(),
            parent: vec![0],
        }
    }

    /// Builds a tree from ordered child lists indexed by label.
    pub fn from_children(children: Vec<Vec<usize>>) -> Result<Self, TreeError> {
        if children.is_empty() {
            return Err(TreeError::Invalid("no root node".into()));
        }
        let n = children.len() - 1;
        let mut parent = vec![usize::MAX; n + 1];
        for (v, list) in children.iter().enumerate() {
            for &c in list {
                if c > n {
                    return Err(TreeError::Invalid(format!("node {v} has child {c} outside 0..={n}")));
                }
                if c <= v {
                    return Err(TreeError::Invalid(format!("child {c} of node {v} does not exceed its parent")));
                }
                if parent[c] != usize::MAX {
                    return Err(TreeError::Invalid(format!("node {c} has two parents ({} and {v})", parent[c])));
                }
                parent[c] = v;
            }
        }
        if let Some(orphan) = (1..=n).find(|&c| parent[c] == usize::MAX) {
            return Err(TreeError::Invalid(format!("node {orphan} has no parent")));
        }
        parent[0] = 0;
        let mut offsets = Vec::with_capacity(n + 2);
        let mut kids = Vec::with_capacity(n);
        offsets.push(0);
        for list in &children {
            kids.extend_from_slice(list);
            offsets.push(kids.len());
        }
        Ok(Self { offsets, kids, parent })
    }

    /// Builds a tree from first-child / next-sibling links (`usize::MAX` = none).
    /// Callers guarantee the links describe an increasing tree.
    pub(crate) fn from_links(first_child: &[usize], next_sibling: &[usize]) -> Self {
        let total = first_child.len();
        let mut offsets = Vec::with_capacity(total + 1);
        let mut kids = Vec::with_capacity(total.saturating_sub(1));
        let mut parent = vec![0; total];
        offsets.push(0);
        for v in 0..total {
            let mut c = first_child[v];
            while c != usize::MAX {
                kids.push(c);
                parent[c] = v;
                c = next_sibling[c];
            }
            offsets.push(kids.len());
        }
        debug_assert_eq!(kids.len() + 1, total);
        Self { offsets, kids, parent }
    }

    pub fn size(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.kids[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != 0).then(|| self.parent[v])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Position of `v` among its parent's children.
    pub fn sibling_index(&self, v: usize) -> Option<usize> {
        let p = self.parent(v)?;
        self.children(p).iter().position(|&c| c == v)
    }

    pub fn to_children(&self) -> Vec<Vec<usize>> {
        (0..self.node_count()).map(|v| self.children(v).to_vec()).collect()
    }

    /// Depth of every node (root has depth 0).
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.node_count()];
        // parents carry smaller labels, so label order is a valid top-down order
        for v in 1..self.node_count() {
            depth[v] = depth[self.parent[v]] + 1;
        }
        depth
    }

    /// For every label `k ≥ 1`, the nearest sibling to the left of `k` whose
    /// label is smaller than `k`, i.e. the left sibling of `k` in the tree
    /// restricted to labels `0..=k`. Index 0 is always `None`.
    pub fn prefix_left_siblings(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.node_count()];
        let mut stack: Vec<usize> = Vec::new();
        for v in 0..self.node_count() {
            stack.clear();
            for &c in self.children(v) {
                while stack.last().is_some_and(|&top| top > c) {
                    stack.pop();
                }
                out[c] = stack.last().copied();
                stack.push(c);
            }
        }
        out
    }

    /// `true` at label `k` iff `k` was inserted as a maximal young leaf, i.e.
    /// it has no left sibling once the tree is restricted to labels `0..=k`.
    pub fn maximal_young_insertions(&self) -> Vec<bool> {
        let mut flags: Vec<bool> = self.prefix_left_siblings().iter().map(Option::is_none).collect();
        flags[0] = false;
        flags
    }

    /// Nodes in preorder (children left to right).
    pub fn preorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children(v).iter().rev());
        }
        order
    }

    /// Nodes in postorder (children left to right, then the node).
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = self.preorder_mirrored();
        order.reverse();
        order
    }

    // preorder visiting children right to left; its reverse is the postorder
    fn preorder_mirrored(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children(v).iter());
        }
        order
    }
}

impl fmt::Debug for PlaneIncreasingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneIncreasingTree")?;
        f.debug_map()
            .entries((0..self.node_count()).map(|v| (v, self.children(v))))
            .finish()
    }
}
