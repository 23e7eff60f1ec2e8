//! Growth-history encoding of plane increasing trees.
//!
//! Inserting node `i` into a tree on labels `0..i` has `2i - 1` possible
//! places: a node of out-degree `d` offers `d + 1` gaps. Gaps are numbered by
//! visiting host nodes in postorder and, within a host, in the order
//! (first child, after child 1, ..., after child d).

use super::{PlaneIncreasingTree, TreeError};

/// Positions `p_1..p_n` with `0 <= p_i <= 2i - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InsertionCode(Vec<usize>);

impl InsertionCode {
    pub fn new(positions: Vec<usize>) -> Result<Self, TreeError> {
        for (idx, &p) in positions.iter().enumerate() {
            let step = idx + 1;
            if p > 2 * step - 2 {
                return Err(TreeError::MalformedCode { step, position: p, bound: 2 * step - 2 });
            }
        }
        Ok(Self(positions))
    }

    /// Number of choices at step `i` (1-based): `2i - 1`.
    pub fn radix(step: usize) -> usize {
        2 * step - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn into_positions(self) -> Vec<usize> {
        self.0
    }
}

fn postorder_of(children: &[Vec<usize>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(children.len());
    let mut stack = vec![(0usize, false)];
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            order.push(v);
        } else {
            stack.push((v, true));
            stack.extend(children[v].iter().rev().map(|&c| (c, false)));
        }
    }
    order
}

/// Replays the growth process described by `code`.
pub fn decode(code: &InsertionCode) -> PlaneIncreasingTree {
    let n = code.len();
    let mut children: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    children.push(Vec::new());
    for (idx, &p) in code.positions().iter().enumerate() {
        let label = idx + 1;
        let mut remaining = p;
        let mut placed = false;
        for host in postorder_of(&children) {
            let gaps = children[host].len() + 1;
            if remaining < gaps {
                children[host].insert(remaining, label);
                placed = true;
                break;
            }
            remaining -= gaps;
        }
        debug_assert!(placed, "InsertionCode invariant guarantees a gap");
        children.push(Vec::new());
    }
    PlaneIncreasingTree::from_children(children).expect("growth process yields increasing trees")
}

/// Inverse of [`decode`].
pub fn encode(tree: &PlaneIncreasingTree) -> InsertionCode {
    let n = tree.size();
    let mut children = tree.to_children();
    let mut positions = vec![0; n];
    for label in (1..=n).rev() {
        // `label` is a leaf of the tree restricted to 0..=label
        let host = tree.parent(label).expect("non-root");
        let gap = children[host].iter().position(|&c| c == label).expect("child present");
        children[host].remove(gap);
        children.truncate(label);
        let mut offset = 0;
        for v in postorder_of(&children) {
            if v == host {
                break;
            }
            offset += children[v].len() + 1;
        }
        positions[label - 1] = offset + gap;
    }
    InsertionCode(positions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(children: Vec<Vec<usize>>) -> PlaneIncreasingTree {
        PlaneIncreasingTree::from_children(children).unwrap()
    }

    #[test]
    fn empty_code_is_root() {
        let code = InsertionCode::new(vec![]).unwrap();
        assert_eq!(decode(&code), PlaneIncreasingTree::root_only());
        assert!(encode(&PlaneIncreasingTree::root_only()).is_empty());
    }

    #[test]
    fn size_two_codes() {
        let chain = tree(vec![vec![1], vec![2], vec![]]);
        let ordered = tree(vec![vec![1, 2], vec![], vec![]]);
        let swapped = tree(vec![vec![2, 1], vec![], vec![]]);
        assert_eq!(decode(&InsertionCode::new(vec![0, 0]).unwrap()), chain);
        assert_eq!(decode(&InsertionCode::new(vec![0, 1]).unwrap()), swapped);
        assert_eq!(decode(&InsertionCode::new(vec![0, 2]).unwrap()), ordered);
        assert_eq!(encode(&chain).positions(), &[0, 0]);
    }

    #[test]
    fn out_of_range_position() {
        let err = InsertionCode::new(vec![0, 3]).unwrap_err();
        assert!(matches!(err, TreeError::MalformedCode { step: 2, position: 3, bound: 2 }));
        assert!(InsertionCode::new(vec![1]).is_err());
    }

    #[test]
    fn all_size_three_codes_are_distinct_trees() {
        let mut seen = std::collections::HashSet::new();
        for a in 0..3 {
            for b in 0..5 {
                let code = InsertionCode::new(vec![0, a, b]).unwrap();
                let t = decode(&code);
                assert_eq!(encode(&t), code);
                assert!(seen.insert(t));
            }
        }
        assert_eq!(seen.len(), 15);
    }
}
