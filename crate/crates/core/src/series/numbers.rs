use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SeriesError;

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `k!!`; equals 1 for `k <= 0`, so `(2n - 1)!!` is 1 at `n = 0`.
pub fn double_factorial(k: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    acc
}

fn linear_recurrence(a: i64, b: i64, n: u64) -> BigInt {
    let (mut x, mut y) = (BigInt::from(a), BigInt::from(b));
    for _ in 0..n {
        let next = &x + &y;
        x = std::mem::replace(&mut y, next);
    }
    x
}

/// `F_0 = 0, F_1 = 1`.
pub fn fibonacci(n: u64) -> BigInt {
    linear_recurrence(0, 1, n)
}

/// `L_0 = 2, L_1 = 1`.
pub fn lucas(n: u64) -> BigInt {
    linear_recurrence(2, 1, n)
}

/// Increasing trees on `m` nodes (root included) whose root has `k`
/// children: `k (2m-3-k)! / (2^(m-1-k) (m-1-k)!)` for `1 <= k <= m - 1`.
pub fn root_degree_count(m: u64, k: u64) -> Result<BigInt, SeriesError> {
    if k == 0 || k + 1 > m {
        return Err(SeriesError::Domain(format!("root degree {k} outside 1..={} for {m} nodes", m.saturating_sub(1))));
    }
    let free = m - 1 - k;
    let num = BigInt::from(k) * factorial(2 * m - 3 - k);
    let den = (BigInt::one() << free) * factorial(free);
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// Limiting probability that a node has `d` children: `4 / ((d+1)(d+2)(d+3))`.
pub fn outdeg_limit(d: u64) -> BigRational {
    BigRational::new(4.into(), BigInt::from((d + 1) * (d + 2) * (d + 3)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        assert_eq!(fibonacci(10), 55.into());
        let l: Vec<BigInt> = (0..6).map(lucas).collect();
        assert_eq!(l, [2, 1, 3, 4, 7, 11].map(BigInt::from));
        assert_eq!(double_factorial(9), 945.into());
        assert_eq!(double_factorial(-1), 1.into());
        assert_eq!(factorial(0), 1.into());
    }

    #[test]
    fn root_degrees() {
        let c: Vec<BigInt> = (1..4).map(|k| root_degree_count(4, k).unwrap()).collect();
        assert_eq!(c, [3, 6, 6].map(BigInt::from));
        assert_eq!(root_degree_count(2, 1).unwrap(), 1.into());
        assert!(root_degree_count(4, 4).is_err());
        assert!(root_degree_count(4, 0).is_err());
        for m in 2..12u64 {
            let total: BigInt = (1..m).map(|k| root_degree_count(m, k).unwrap()).sum();
            assert_eq!(total, double_factorial(2 * (m as i64 - 1) - 1), "m = {m}");
        }
    }

    #[test]
    fn outdegree_law() {
        assert_eq!(outdeg_limit(0), BigRational::new(2.into(), 3.into()));
        assert_eq!(outdeg_limit(1), BigRational::new(1.into(), 6.into()));
        assert_eq!(outdeg_limit(2), BigRational::new(1.into(), 15.into()));
    }
}
