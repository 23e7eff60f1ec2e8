//! Exhaustive generation of both families in insertion-code order.

use num_bigint::BigUint;
use num_traits::One;

use crate::bijection::increasing_to_relaxed;
use crate::trees::{decode, InsertionCode, PlaneIncreasingTree, RelaxedTree};

/// Default largest size enumerated without an explicit override.
pub const DEFAULT_MAX_SIZE: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum EnumerateError {
    #[error("size {size} exceeds the enumeration bound {bound}; raise the bound explicitly to proceed")]
    TooLarge { size: usize, bound: usize },
}

/// Refuses sizes above `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeGuard {
    pub bound: usize,
}

impl Default for SizeGuard {
    fn default() -> Self {
        Self { bound: DEFAULT_MAX_SIZE }
    }
}

impl SizeGuard {
    pub fn unbounded() -> Self {
        Self { bound: usize::MAX }
    }

    pub fn check(self, size: usize) -> Result<(), EnumerateError> {
        if size > self.bound {
            Err(EnumerateError::TooLarge { size, bound: self.bound })
        } else {
            Ok(())
        }
    }
}

/// `(2n - 1)!!`, the number of trees of size `n` in either family.
pub fn count_all(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(2 * i - 1))
}

/// `(2n - 1)!!` when it fits in a `u64` (up to n = 17).
pub fn count_all_u64(n: usize) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, i| acc.checked_mul(2 * i as u64 - 1))
}

/// Odometer over insertion codes of length `n`, lexicographic with `p_1`
/// most significant. Yields ranks in `[start, end)`.
#[derive(Clone, Debug)]
pub struct Codes {
    digits: Vec<usize>,
    remaining: u64,
}

impl Codes {
    pub fn new(n: usize) -> Self {
        Self::range(n, 0, count_all_u64(n).expect("code space fits in u64"))
    }

    /// Codes with ranks `start..end` (clamped to the code space).
    pub fn range(n: usize, start: u64, end: u64) -> Self {
        let total = count_all_u64(n).expect("code space fits in u64");
        let end = end.min(total);
        let start = start.min(end);
        Self { digits: unrank(n, start), remaining: end - start }
    }
}

/// Code with the given lexicographic rank.
pub fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut digits = vec![0; n];
    for step in (1..=n).rev() {
        let radix = InsertionCode::radix(step) as u64;
        digits[step - 1] = (rank % radix) as usize;
        rank /= radix;
    }
    digits
}

impl Iterator for Codes {
    type Item = InsertionCode;

    fn next(&mut self) -> Option<InsertionCode> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = InsertionCode::new(self.digits.clone()).expect("odometer stays in range");
        for step in (1..=self.digits.len()).rev() {
            let d = &mut self.digits[step - 1];
            *d += 1;
            if *d < InsertionCode::radix(step) {
                break;
            }
            *d = 0;
        }
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

impl ExactSizeIterator for Codes {}

/// All plane increasing trees of size `n`, in code order.
pub fn enumerate_increasing(n: usize, guard: SizeGuard) -> Result<impl Iterator<Item = PlaneIncreasingTree> + Clone, EnumerateError> {
    guard.check(n)?;
    Ok(Codes::new(n).map(|c| decode(&c)))
}

/// All relaxed trees of size `n`: the bijective images of
/// [`enumerate_increasing`], in the same order.
pub fn enumerate_relaxed(n: usize, guard: SizeGuard) -> Result<impl Iterator<Item = RelaxedTree> + Clone, EnumerateError> {
    Ok(enumerate_increasing(n, guard)?.map(|t| increasing_to_relaxed(&t)))
}

/// Splits the code space of size `n` into `parts` contiguous rank ranges.
pub fn partition(n: usize, parts: usize) -> Vec<(u64, u64)> {
    let total = count_all_u64(n).expect("code space fits in u64");
    let parts = parts.max(1) as u64;
    (0..parts).map(|w| (total * w / parts, total * (w + 1) / parts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{encode, validate_relaxed};
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(count_all(0), BigUint::one());
        assert_eq!(count_all(1), BigUint::one());
        assert_eq!(count_all(6), BigUint::from(10395u32));
        assert_eq!(count_all_u64(17), Some(6_332_659_870_762_850_625));
        assert!(count_all_u64(18).is_none());
    }

    #[test]
    fn small_sizes() {
        let g = SizeGuard::default();
        assert_eq!(enumerate_increasing(0, g).unwrap().count(), 1);
        assert_eq!(enumerate_increasing(3, g).unwrap().count(), 15);
        assert_eq!(enumerate_increasing(6, g).unwrap().count(), 10395);
    }

    #[test]
    fn codes_are_lexicographic() {
        let codes: Vec<_> = Codes::new(3).map(InsertionCode::into_positions).collect();
        let mut sorted = codes.clone();
        sorted.sort();
        assert_eq!(codes, sorted);
        assert_eq!(codes.first().unwrap(), &vec![0, 0, 0]);
        assert_eq!(codes.last().unwrap(), &vec![0, 2, 4]);
        for (rank, code) in codes.iter().enumerate() {
            assert_eq!(&unrank(3, rank as u64), code);
        }
    }

    #[test]
    fn relaxed_size_five_distinct_and_valid() {
        let mut seen = HashSet::new();
        for t in enumerate_relaxed(5, SizeGuard::default()).unwrap() {
            assert!(validate_relaxed(&t).is_empty());
            assert!(seen.insert(t.to_json()));
        }
        assert_eq!(seen.len(), 945);
    }

    #[test]
    fn guard_refuses() {
        let err = enumerate_increasing(11, SizeGuard::default()).err().unwrap();
        assert!(matches!(err, EnumerateError::TooLarge { size: 11, bound: 10 }));
        assert!(enumerate_increasing(2, SizeGuard { bound: 1 }).is_err());
    }

    #[test]
    fn partitions_cover_in_order() {
        let whole: Vec<_> = enumerate_increasing(4, SizeGuard::default()).unwrap().collect();
        let mut parts = Vec::new();
        for (a, b) in partition(4, 4) {
            parts.extend(Codes::range(4, a, b).map(|c| decode(&c)));
        }
        assert_eq!(parts, whole);
    }

    #[test]
    fn restartable() {
        let it = enumerate_increasing(3, SizeGuard::default()).unwrap();
        let a: Vec<_> = it.clone().map(|t| encode(&t)).collect();
        let b: Vec<_> = it.map(|t| encode(&t)).collect();
        assert_eq!(a, b);
    }
}
