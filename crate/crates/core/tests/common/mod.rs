//! Brute-force oracle: every relaxed binary tree of a size, generated from
//! binary tree shapes and pointer choices, independent of the bijection.

#![allow(dead_code)]

use arbo::trees::{RelaxedTree, Slot, LEAF};

#[derive(Clone, Debug)]
enum Shape {
    Leaf,
    Node(Box<Shape>, Box<Shape>),
}

impl Shape {
    fn internal(&self) -> usize {
        match self {
            Shape::Leaf => 0,
            Shape::Node(l, r) => 1 + l.internal() + r.internal(),
        }
    }
}

/// Binary tree shapes with `n` internal nodes and at most `budget` right
/// internal edges on any root-to-leaf path (`None`: unbounded).
fn shapes(n: usize, budget: Option<usize>) -> Vec<Shape> {
    if n == 0 {
        return vec![Shape::Leaf];
    }
    let mut out = Vec::new();
    for k in 0..n {
        let right_size = n - 1 - k;
        let right_budget = if right_size == 0 {
            budget
        } else {
            match budget {
                Some(0) => continue,
                Some(b) => Some(b - 1),
                None => None,
            }
        };
        let lefts = shapes(k, budget);
        let rights = shapes(right_size, right_budget);
        for l in &lefts {
            for r in &rights {
                out.push(Shape::Node(Box::new(l.clone()), Box::new(r.clone())));
            }
        }
    }
    out
}

enum Content {
    Child(usize),
    /// Pointer slot; any of the first `avail` completed nodes or the leaf.
    Choice { avail: usize },
    FirstLeaf,
}

struct Walker {
    next_label: usize,
    first_leaf_seen: bool,
    completed: Vec<usize>,
    // per label: (left, right)
    slots: Vec<Option<[Content; 2]>>,
}

impl Walker {
    /// Assigns inorder labels, then returns the label of the subtree root.
    fn label(&mut self, s: &Shape, labels: &mut Vec<usize>) {
        if let Shape::Node(l, r) = s {
            self.label(l, labels);
            self.next_label += 1;
            labels.push(self.next_label);
            self.label(r, labels);
        }
    }

    /// Postorder walk; `labels` is consumed in inorder.
    fn walk(&mut self, s: &Shape, inorder: &[usize], pos: &mut usize) -> Option<usize> {
        match s {
            Shape::Leaf => None,
            Shape::Node(l, r) => {
                let left_root = self.walk(l, inorder, pos);
                let me = inorder[*pos];
                *pos += 1;
                let left = self.content(left_root);
                let right_root = self.walk(r, inorder, pos);
                let right = self.content(right_root);
                self.slots[me] = Some([left, right]);
                self.completed.push(me);
                Some(me)
            }
        }
    }

    fn content(&mut self, child: Option<usize>) -> Content {
        match child {
            Some(c) => Content::Child(c),
            None if !self.first_leaf_seen => {
                self.first_leaf_seen = true;
                Content::FirstLeaf
            }
            None => Content::Choice { avail: self.completed.len() },
        }
    }
}

fn expand(shape: &Shape, out: &mut Vec<RelaxedTree>) {
    let n = shape.internal();
    let mut w = Walker { next_label: 0, first_leaf_seen: false, completed: Vec::new(), slots: Vec::new() };
    let mut inorder = Vec::new();
    w.label(shape, &mut inorder);
    w.slots = (0..=n).map(|_| None).collect();
    let mut pos = 0;
    w.walk(shape, &inorder, &mut pos);
    // pointer slots in a fixed order with their candidate targets
    let mut choices: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut base = vec![[Slot::Ptr(LEAF); 2]; n];
    for label in 1..=n {
        let pair = w.slots[label].as_ref().unwrap();
        for side in 0..2 {
            match pair[side] {
                Content::Child(c) => base[label - 1][side] = Slot::Edge(c),
                Content::FirstLeaf => base[label - 1][side] = Slot::Edge(LEAF),
                Content::Choice { avail } => {
                    let mut targets = vec![LEAF];
                    targets.extend_from_slice(&w.completed[..avail]);
                    choices.push((label, side, targets));
                }
            }
        }
    }
    let mut idx = vec![0; choices.len()];
    loop {
        let mut slots = base.clone();
        for (k, (label, side, targets)) in choices.iter().enumerate() {
            slots[label - 1][*side] = Slot::Ptr(targets[idx[k]]);
        }
        out.push(RelaxedTree::from_slots(slots));
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].2.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// All relaxed binary trees with `n` internal nodes, optionally restricted
/// to right height at most `max_right_height`. Node ids are inorder labels.
pub fn brute_force_relaxed(n: usize, max_right_height: Option<usize>) -> Vec<RelaxedTree> {
    let mut out = Vec::new();
    for s in shapes(n, max_right_height) {
        expand(&s, &mut out);
    }
    out
}
