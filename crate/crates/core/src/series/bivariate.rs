//! Bivariate counting polynomials: `u` marks level-0 nodes or branches.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{factorial, Poly, PolySeries, SeriesError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Moment {
    Mean,
    Variance,
}

/// `r_0..=r_N` with `r_n(u) = sum_k r_{nk} u^k`, the number of trees of size
/// `n` with `k` level-0 nodes, from `r_{n+1} = ((n+1)u + n) r_n`.
pub fn level0_polynomials(order: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(order + 1);
    let mut r = Poly::from_ints([1]);
    for n in 0..=order {
        out.push(r.clone());
        r = &Poly::from_ints([n as i64, n as i64 + 1]) * &r;
    }
    out
}

/// `s_0..=s_N`, `n! [z^n] (1 - 2z + (1-u) z^2)^(-1/2)`; `u` marks branches.
pub fn branch_polynomials(order: usize) -> Vec<Poly> {
    let mut c = vec![Poly::default(); order + 1];
    c[0] = Poly::from_ints([1]);
    if order >= 1 {
        c[1] = Poly::from_ints([-2]);
    }
    if order >= 2 {
        c[2] = Poly::from_ints([1, -1]);
    }
    let s = PolySeries::from_coeffs(c).sqrt_inv().expect("constant term is one");
    s.coeffs()
        .iter()
        .enumerate()
        .map(|(n, p)| p.scale(&BigRational::from_integer(factorial(n as u64))))
        .collect()
}

/// Mean `p'(1)/p(1)` or variance `p''(1)/p(1) + mean - mean^2` of the
/// distribution with probability generating polynomial proportional to `p`.
pub fn exact_moments(p: &Poly, kind: Moment) -> Result<BigRational, SeriesError> {
    let one = BigRational::one();
    let total = p.eval(&one);
    if total.is_zero() {
        return Err(SeriesError::Domain("polynomial vanishes at u = 1".into()));
    }
    let d1 = p.derivative();
    let mean = d1.eval(&one) / &total;
    Ok(match kind {
        Moment::Mean => mean,
        Moment::Variance => d1.derivative().eval(&one) / &total + &mean - &mean * &mean,
    })
}
