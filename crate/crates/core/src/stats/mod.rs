//! Tree parameters, their exact distributions over all trees of a size, and
//! sampled distributions for large sizes.
//!
//! Every parameter is defined on both families; on relaxed trees it is read
//! from the normalized pointer assignment (pointer-path lengths, parent
//! in-degrees) or from node levels. The out-degree of a node on the relaxed
//! side counts the pointer-paths whose first parent pointer enters it, which
//! differs from its parent-pointer in-degree once sibling pointers occur.

mod normality;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{normalize_pointers, PointerKind};
use crate::enumerate::{partition, Codes, EnumerateError, SizeGuard};
use crate::sample::stream_increasing;
use crate::trees::{decode, roles_unchecked, PlaneIncreasingTree, RelaxedTree, TreeError};

pub use normality::{lattice_ks, normality_check, normality_check_samples, rayleigh_ks, NormalityReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamId {
    Level0Nodes,
    Branches,
    MaxYoungLeafInsertions,
    DominatingYoungLeaves,
    DepthOfLast,
    LeafCount,
    RootDegree,
    Height,
    OutdegreeHistogram,
}

impl ParamId {
    pub const ALL: [ParamId; 9] = [
        ParamId::Level0Nodes,
        ParamId::Branches,
        ParamId::MaxYoungLeafInsertions,
        ParamId::DominatingYoungLeaves,
        ParamId::DepthOfLast,
        ParamId::LeafCount,
        ParamId::RootDegree,
        ParamId::Height,
        ParamId::OutdegreeHistogram,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamId::Level0Nodes => "level0_nodes",
            ParamId::Branches => "branches",
            ParamId::MaxYoungLeafInsertions => "max_young_leaf_insertions",
            ParamId::DominatingYoungLeaves => "dominating_young_leaves",
            ParamId::DepthOfLast => "depth_of_last",
            ParamId::LeafCount => "leaf_count",
            ParamId::RootDegree => "root_degree",
            ParamId::Height => "height",
            ParamId::OutdegreeHistogram => "outdegree_histogram",
        }
    }
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParamId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown parameter {s:?}"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum StatsError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("degenerate distribution: {0}")]
    Degenerate(String),
}

/// A tree of either family.
#[derive(Clone, Copy, Debug)]
pub enum TreeRef<'a> {
    Increasing(&'a PlaneIncreasingTree),
    Relaxed(&'a RelaxedTree),
}

/// Value of a parameter: a count, or a histogram over nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Scalar(u64),
    Histogram(BTreeMap<u64, u64>),
}

impl ParamValue {
    pub fn scalar(&self) -> Option<u64> {
        match self {
            ParamValue::Scalar(v) => Some(*v),
            ParamValue::Histogram(_) => None,
        }
    }
}

fn histogram(values: impl IntoIterator<Item = usize>) -> BTreeMap<u64, u64> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v as u64).or_insert(0) += 1;
    }
    h
}

/// Labels `k` with `flags[k]` and `k + 1 <= n` without.
fn dominating(flags: &[bool]) -> u64 {
    flags.windows(2).skip(1).filter(|w| w[0] && !w[1]).count() as u64
}

fn eval_increasing(t: &PlaneIncreasingTree, param: ParamId) -> ParamValue {
    use ParamValue::Scalar;
    let n = t.size();
    match param {
        ParamId::Level0Nodes | ParamId::MaxYoungLeafInsertions => {
            Scalar(t.maximal_young_insertions().iter().filter(|&&f| f).count() as u64)
        }
        ParamId::Branches | ParamId::DominatingYoungLeaves => Scalar(dominating(&t.maximal_young_insertions())),
        ParamId::DepthOfLast => Scalar(t.depths()[n] as u64),
        ParamId::LeafCount => Scalar((0..=n).filter(|&v| t.out_degree(v) == 0).count() as u64),
        ParamId::RootDegree => Scalar(t.out_degree(0) as u64),
        ParamId::Height => Scalar(t.depths().into_iter().max().unwrap_or(0) as u64),
        ParamId::OutdegreeHistogram => ParamValue::Histogram(histogram((0..=n).map(|v| t.out_degree(v)))),
    }
}

fn eval_relaxed(t: &RelaxedTree, param: ParamId) -> Result<ParamValue, TreeError> {
    use ParamValue::Scalar;
    let a = normalize_pointers(t)?;
    let n = t.size();
    Ok(match param {
        ParamId::Level0Nodes => Scalar(roles_unchecked(t).iter().skip(1).filter(|r| r.level == 0).count() as u64),
        ParamId::Branches => Scalar(roles_unchecked(t).iter().filter(|r| r.is_branch_node).count() as u64),
        ParamId::MaxYoungLeafInsertions | ParamId::DominatingYoungLeaves => {
            // a parent pointer at label k marks a maximal-young insertion of k
            let mut flags = vec![false; n + 1];
            for (k, p) in a.iter() {
                flags[k] = p.kind == PointerKind::Parent;
            }
            if param == ParamId::DominatingYoungLeaves {
                Scalar(dominating(&flags))
            } else {
                Scalar(flags.iter().filter(|&&f| f).count() as u64)
            }
        }
        ParamId::DepthOfLast => Scalar(a.path_lengths()[n] as u64),
        ParamId::LeafCount => Scalar(a.parent_indegrees().iter().filter(|&&d| d == 0).count() as u64),
        ParamId::RootDegree => Scalar(a.path_lengths().iter().filter(|&&l| l == 1).count() as u64),
        ParamId::Height => Scalar(a.path_lengths().into_iter().max().unwrap_or(0) as u64),
        ParamId::OutdegreeHistogram => {
            // out-degree of i: pointer-paths whose first parent pointer enters i
            let mut deg = vec![0; n + 1];
            for &p in &a.parents()[1..] {
                deg[p] += 1;
            }
            ParamValue::Histogram(histogram(deg))
        }
    })
}

/// Evaluates `param` on a tree of either family.
pub fn eval_param(tree: TreeRef<'_>, param: ParamId) -> Result<ParamValue, TreeError> {
    match tree {
        TreeRef::Increasing(t) => Ok(eval_increasing(t, param)),
        TreeRef::Relaxed(t) => eval_relaxed(t, param),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Exhaustive,
    Sampled { seed: u64, samples: u64 },
}

/// Value-to-count table of a parameter at one size. For histogram
/// parameters the counts are summed over all nodes of all trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub param: ParamId,
    pub size: usize,
    pub counts: BTreeMap<u64, u64>,
    pub provenance: Provenance,
}

impl Distribution {
    pub fn empty(param: ParamId, size: usize, provenance: Provenance) -> Self {
        Self { param, size, counts: BTreeMap::new(), provenance }
    }

    fn add(&mut self, value: ParamValue) {
        match value {
            ParamValue::Scalar(v) => *self.counts.entry(v).or_insert(0) += 1,
            ParamValue::Histogram(h) => {
                for (v, c) in h {
                    *self.counts.entry(v).or_insert(0) += c;
                }
            }
        }
    }

    /// Combines counts of two partial aggregates.
    pub fn merge(mut self, other: Self) -> Self {
        for (v, c) in other.counts {
            *self.counts.entry(v).or_insert(0) += c;
        }
        self
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn frequency(&self, value: u64) -> f64 {
        self.counts.get(&value).copied().unwrap_or(0) as f64 / self.total() as f64
    }

    pub fn mean(&self) -> f64 {
        let t = self.total() as f64;
        self.counts.iter().map(|(&v, &c)| v as f64 * c as f64).sum::<f64>() / t
    }

    /// Population variance.
    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let t = self.total() as f64;
        self.counts.iter().map(|(&v, &c)| (v as f64 - m).powi(2) * c as f64).sum::<f64>() / t
    }

    pub fn exact_mean(&self) -> Option<BigRational> {
        let t = self.total();
        (t > 0).then(|| {
            let s: BigInt = self.counts.iter().map(|(&v, &c)| BigInt::from(v) * c).sum();
            BigRational::new(s, t.into())
        })
    }

    pub fn exact_variance(&self) -> Option<BigRational> {
        let m = self.exact_mean()?;
        let s: BigRational = self
            .counts
            .iter()
            .map(|(&v, &c)| {
                let d = BigRational::from_integer(v.into()) - &m;
                &d * &d * BigRational::from_integer(c.into())
            })
            .fold(BigRational::zero(), |a, b| a + b);
        Some(s / BigRational::from_integer(self.total().into()))
    }
}

/// Distribution of `param` over all plane increasing trees of size `n`.
pub fn exact_distribution(param: ParamId, n: usize, guard: SizeGuard) -> Result<Distribution, StatsError> {
    guard.check(n)?;
    let empty = || Distribution::empty(param, n, Provenance::Exhaustive);
    let parts = partition(n, rayon::current_num_threads() * 4);
    Ok(parts
        .into_par_iter()
        .map(|(a, b)| {
            let mut d = empty();
            for code in Codes::range(n, a, b) {
                d.add(eval_increasing(&decode(&code), param));
            }
            d
        })
        .reduce(empty, Distribution::merge))
}

/// Distribution of `param` over `samples` uniform trees of size `n`, draw `j`
/// taken from substream `j` of `seed`.
pub fn sampled_distribution(param: ParamId, n: usize, samples: u64, seed: u64) -> Distribution {
    let empty = || Distribution::empty(param, n, Provenance::Sampled { seed, samples });
    (0..samples)
        .into_par_iter()
        .fold(empty, |mut d, j| {
            d.add(eval_increasing(&stream_increasing(n, seed, j), param));
            d
        })
        .reduce(empty, Distribution::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::fixtures::running_example;
    use crate::bijection::{assignment_to_increasing, increasing_to_relaxed};
    use crate::enumerate::enumerate_increasing;

    fn counts(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn size_two_distributions() {
        let g = SizeGuard::default();
        assert_eq!(exact_distribution(ParamId::Level0Nodes, 2, g).unwrap().counts, counts(&[(1, 1), (2, 2)]));
        assert_eq!(exact_distribution(ParamId::Branches, 2, g).unwrap().counts, counts(&[(0, 2), (1, 1)]));
        let leaves = exact_distribution(ParamId::LeafCount, 2, g).unwrap();
        assert_eq!(leaves.exact_mean().unwrap(), BigRational::new(5.into(), 3.into()));
    }

    #[test]
    fn root_degree_size_three() {
        let d = exact_distribution(ParamId::RootDegree, 3, SizeGuard::default()).unwrap();
        assert_eq!(d.counts, counts(&[(1, 3), (2, 6), (3, 6)]));
    }

    #[test]
    fn dominating_examples() {
        let chain = PlaneIncreasingTree::from_children(vec![vec![1], vec![2], vec![]]).unwrap();
        let right = PlaneIncreasingTree::from_children(vec![vec![1, 2], vec![], vec![]]).unwrap();
        let left = PlaneIncreasingTree::from_children(vec![vec![2, 1], vec![], vec![]]).unwrap();
        let eval = |t| eval_param(TreeRef::Increasing(t), ParamId::DominatingYoungLeaves).unwrap().scalar().unwrap();
        assert_eq!([eval(&chain), eval(&right), eval(&left)], [0, 1, 0]);
    }

    #[test]
    fn running_example_height() {
        let t = increasing_to_relaxed(&assignment_to_increasing(&running_example()));
        assert_eq!(eval_param(TreeRef::Relaxed(&t), ParamId::Height).unwrap(), ParamValue::Scalar(3));
    }

    #[test]
    fn both_sides_agree() {
        for n in 0..=5 {
            for t in enumerate_increasing(n, SizeGuard::default()).unwrap() {
                let r = increasing_to_relaxed(&t);
                for p in ParamId::ALL {
                    assert_eq!(
                        eval_param(TreeRef::Increasing(&t), p).unwrap(),
                        eval_param(TreeRef::Relaxed(&r), p).unwrap(),
                        "{p} on {t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn sampled_is_deterministic_and_empty_at_zero() {
        let a = sampled_distribution(ParamId::Height, 20, 50, 9);
        assert_eq!(a, sampled_distribution(ParamId::Height, 20, 50, 9));
        assert_eq!(a.total(), 50);
        assert_eq!(sampled_distribution(ParamId::Height, 20, 0, 9).total(), 0);
    }

    #[test]
    fn param_names_roundtrip() {
        for p in ParamId::ALL {
            assert_eq!(p.name().parse::<ParamId>().unwrap(), p);
        }
    }
}
