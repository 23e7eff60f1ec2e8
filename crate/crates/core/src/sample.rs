//! Uniform random generation in linear time.
//!
//! Step `i` of the growth process draws one integer uniformly from
//! `0..2i-1`. A draw `r < i` makes node `i` the first child of node `r`
//! (level 0 on the relaxed side, parent pointer to `r`). A draw `r >= i`
//! places node `i` immediately right of node `r - i + 1` (level 1, sibling
//! pointer). Both samplers consume the same decisions, so for equal seeds
//! the relaxed sample is the bijective image of the increasing sample.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijection::RelaxedBuilder;
use crate::trees::{PlaneIncreasingTree, RelaxedTree};

const NONE: usize = usize::MAX;

/// Which family a sampler or stream produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeKind {
    Increasing,
    Relaxed,
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of substream `index` derived from `seed`.
pub fn substream_seed(seed: u64, index: u64) -> u64 {
    mix(mix(seed ^ 0x9e37_79b9_7f4a_7c15).wrapping_add(mix(index.wrapping_add(0x632b_e59b_d9b4_e019))))
}

/// Uniform integer in `0..bound` by multiply-and-reject on 64-bit words.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    assert!(bound > 0);
    let threshold = bound.wrapping_neg() % bound;
    loop {
        let wide = u128::from(rng.next_u64()) * u128::from(bound);
        if (wide as u64) >= threshold {
            return (wide >> 64) as u64;
        }
    }
}

/// Counters for the most recent sample.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GrowthStats {
    /// Uniform draws consumed (one per node).
    pub draws: u64,
    /// Largest number of nodes held by the sampler at any point.
    pub peak_nodes: usize,
}

/// A seeded generator of uniform trees.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    stats: GrowthStats,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), stats: GrowthStats::default() }
    }

    /// Generator for substream `index` of `seed`.
    pub fn for_stream(seed: u64, index: u64) -> Self {
        Self::new(substream_seed(seed, index))
    }

    pub fn last_stats(&self) -> GrowthStats {
        self.stats
    }

    fn decide(&mut self, step: usize) -> usize {
        self.stats.draws += 1;
        uniform_below(&mut self.rng, 2 * step as u64 - 1) as usize
    }

    /// Uniform plane increasing tree of size `n`.
    pub fn increasing(&mut self, n: usize) -> PlaneIncreasingTree {
        self.stats = GrowthStats::default();
        let mut first_child = Vec::with_capacity(n + 1);
        let mut next_sibling = Vec::with_capacity(n + 1);
        first_child.push(NONE);
        next_sibling.push(NONE);
        self.stats.peak_nodes = 1;
        for i in 1..=n {
            let r = self.decide(i);
            first_child.push(NONE);
            if r < i {
                next_sibling.push(first_child[r]);
                first_child[r] = i;
            } else {
                let s = r - i + 1;
                next_sibling.push(next_sibling[s]);
                next_sibling[s] = i;
            }
            self.stats.peak_nodes = first_child.len();
        }
        PlaneIncreasingTree::from_links(&first_child, &next_sibling)
    }

    /// Uniform relaxed tree of size `n`, grown directly: each step adds a new
    /// level-0 root or a new root of the pending branch.
    pub fn relaxed(&mut self, n: usize) -> RelaxedTree {
        self.stats = GrowthStats::default();
        let mut builder = RelaxedBuilder::new(n);
        self.stats.peak_nodes = 1;
        for i in 1..=n {
            let r = self.decide(i);
            if r < i {
                builder.push_level0(r);
            } else {
                builder.push_branch(r - i + 1);
            }
            self.stats.peak_nodes = builder.len() + 1;
        }
        builder.finish()
    }
}

/// Uniform plane increasing tree of size `n`.
pub fn sample_increasing(n: usize, seed: u64) -> PlaneIncreasingTree {
    Sampler::new(seed).increasing(n)
}

/// Uniform relaxed tree of size `n`.
pub fn sample_relaxed(n: usize, seed: u64) -> RelaxedTree {
    Sampler::new(seed).relaxed(n)
}

/// Draw `index` of the stream `(n, seed)`; draws are independent of how the
/// stream is partitioned.
pub fn stream_increasing(n: usize, seed: u64, index: u64) -> PlaneIncreasingTree {
    Sampler::for_stream(seed, index).increasing(n)
}

pub fn stream_relaxed(n: usize, seed: u64, index: u64) -> RelaxedTree {
    Sampler::for_stream(seed, index).relaxed(n)
}

/// `count` independent increasing trees from substreams `0..count` of `seed`.
pub fn sample_stream(n: usize, seed: u64, count: u64) -> impl Iterator<Item = PlaneIncreasingTree> {
    (0..count).map(move |j| stream_increasing(n, seed, j))
}

/// Relaxed counterpart of [`sample_stream`].
pub fn sample_stream_relaxed(n: usize, seed: u64, count: u64) -> impl Iterator<Item = RelaxedTree> {
    (0..count).map(move |j| stream_relaxed(n, seed, j))
}
