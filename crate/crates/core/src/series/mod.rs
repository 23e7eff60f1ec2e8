//! Truncated power series with exact coefficients, and the catalog of
//! generating functions for the tree families and their subclasses.
//!
//! A [`Series`] of order `N` stores `c_0..=c_N`. Binary operations truncate
//! to the smaller order; [`Series::derive`] lowers the order by one and
//! [`Series::integrate`] raises it by one. Nothing is lazy.

mod bivariate;
mod catalog;
mod numbers;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use bivariate::{branch_polynomials, exact_moments, level0_polynomials, Moment};
pub use catalog::{closed_form, egf_counts, egf_series, solve_class_ode, CherryPointers, ClassSpec, Family, Toggle};
pub use numbers::{double_factorial, factorial, fibonacci, lucas, outdeg_limit, root_degree_count};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("constant term must be invertible")]
    NotInvertible,
    #[error("constant term must be one")]
    ConstantNotOne,
    #[error("constant term must be zero")]
    ConstantNotZero,
    #[error("series of order 0 has no derivative")]
    OrderTooLow,
    #[error("coefficient {index} times {index}! is not an integer")]
    NotIntegral { index: usize },
    #[error("{0}")]
    Domain(String),
}

/// Coefficient ring of a series: exact rationals or polynomials over them.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, r: &BigRational) -> Self;
    /// Multiplicative inverse, when `self` is a unit.
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::constant(One::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs().is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, r: &BigRational) -> Self {
        Poly::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        match self.coeffs() {
            [c] => Some(Poly::constant(c.recip())),
            _ => None,
        }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Truncated power series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

/// Series with rational coefficients.
pub type ExactSeries = Series<BigRational>;
/// Series whose coefficients are polynomials in `u`.
pub type PolySeries = Series<Poly>;

impl<C: Coefficient> Series<C> {
    /// # Panics
    /// If `coeffs` is empty (a series has at least `c_0`).
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * z^k`, truncated.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 / (1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self { coeffs: vec![C::one(); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self { coeffs: (0..=order).map(|n| self.coeffs[n].add(&rhs.coeffs[n])).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self { coeffs: (0..=order).map(|n| self.coeffs[n].sub(&rhs.coeffs[n])).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| C::zero().sub(c)).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(C::zero(), |acc, k| {
                    if self.coeffs[k].is_zero() || rhs.coeffs[n - k].is_zero() {
                        acc
                    } else {
                        acc.add(&self.coeffs[k].mul(&rhs.coeffs[n - k]))
                    }
                })
            })
            .collect();
        Self { coeffs }
    }

    /// Multiplication by `z^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut s = Self::zero(self.order());
        for n in k..=self.order() {
            s.coeffs[n] = self.coeffs[n - k].clone();
        }
        s
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        let inv0 = rhs.coeffs[0].inverse().ok_or(SeriesError::NotInvertible)?;
        let order = self.order().min(rhs.order());
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !rhs.coeffs[k].is_zero() {
                    acc = acc.sub(&rhs.coeffs[k].mul(&out[n - k]));
                }
            }
            out.push(acc.mul(&inv0));
        }
        Ok(Self { coeffs: out })
    }

    pub fn recip(&self) -> Result<Self, SeriesError> {
        Self::one(self.order()).div(self)
    }

    /// `d/dz`; the result has order `N - 1`.
    pub fn derive(&self) -> Result<Self, SeriesError> {
        if self.order() == 0 {
            return Err(SeriesError::OrderTooLow);
        }
        Ok(Self { coeffs: (1..=self.order()).map(|n| self.coeffs[n].scale(&rat(n as i64))).collect() })
    }

    /// Antiderivative with the given constant term; the result has order `N + 1`.
    pub fn integrate(&self, constant: C) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(n, c)| c.scale(&ratio(1, n as i64 + 1))));
        Self { coeffs }
    }

    /// `self^alpha` for a series with constant term one, from
    /// `F * G' = alpha * F' * G` solved coefficient by coefficient.
    pub fn pow_rational(&self, alpha: &BigRational) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantNotOne);
        }
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(C::one());
        for n in 1..=order {
            // n g_n = sum_{k=1}^{n} (alpha k - (n - k)) f_k g_{n-k}
            let mut acc = C::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let weight = alpha * rat(k as i64) - rat((n - k) as i64);
                acc = acc.add(&self.coeffs[k].mul(&out[n - k]).scale(&weight));
            }
            out.push(acc.scale(&ratio(1, n as i64)));
        }
        Ok(Self { coeffs: out })
    }

    /// `self^(-1/2)`.
    pub fn sqrt_inv(&self) -> Result<Self, SeriesError> {
        self.pow_rational(&ratio(-1, 2))
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::ConstantNotZero);
        }
        let order = self.order();
        let mut out: Vec<C> = Vec::with_capacity(order + 1);
        out.push(C::one());
        for n in 1..=order {
            // n e_n = sum_{k=1}^{n} k f_k e_{n-k}
            let mut acc = C::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[n - k]).scale(&rat(k as i64)));
                }
            }
            out.push(acc.scale(&ratio(1, n as i64)));
        }
        Ok(Self { coeffs: out })
    }

    /// `log(self)` for a series with constant term one.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantNotOne);
        }
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        let quotient = self.derive()?.div(&self.truncate(self.order() - 1))?;
        Ok(quotient.integrate(C::zero()))
    }
}

impl ExactSeries {
    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::from_coeffs(coeffs.into_iter().map(rat).collect())
    }

    /// `n! * c_n` for every `n`, failing if any is not an integer.
    pub fn egf_counts(&self) -> Result<Vec<BigInt>, SeriesError> {
        let mut fact = BigInt::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n > 0 {
                    fact *= n;
                }
                let scaled = c * BigRational::from_integer(fact.clone());
                if scaled.is_integer() {
                    Ok(scaled.to_integer())
                } else {
                    Err(SeriesError::NotIntegral { index: n })
                }
            })
            .collect()
    }
}

impl PolySeries {
    /// Substitutes a value for `u`.
    pub fn eval_u(&self, u: &BigRational) -> ExactSeries {
        self.map(|p| p.eval(u))
    }
}

impl<C: fmt::Debug> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series")?;
        f.debug_list().entries(&self.coeffs).finish()?;
        write!(f, " + O(z^{})", self.coeffs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 50;

    fn one_minus(k: i64, order: usize) -> ExactSeries {
        // 1 - k z
        let mut c = vec![rat(0); order + 1];
        c[0] = rat(1);
        c[1] = rat(-k);
        ExactSeries::from_coeffs(c)
    }

    #[test]
    fn exp_log_inverse_pair() {
        let g = ExactSeries::geometric(N);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
        let f = ExactSeries::from_ints((0..=N as i64).map(|n| if n == 0 { 0 } else { n * n - 3 }));
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn sqrt_inv_gives_double_factorials() {
        let r = one_minus(2, N).sqrt_inv().unwrap();
        let counts = r.egf_counts().unwrap();
        for (n, c) in counts.iter().enumerate() {
            assert_eq!(c, &double_factorial(2 * n as i64 - 1), "n = {n}");
        }
        assert_eq!(counts[5], BigInt::from(945));
    }

    #[test]
    fn derive_integrate() {
        let f = ExactSeries::from_ints([3, 1, 4, 1, 5, 9, 2, 6]);
        assert_eq!(f.integrate(rat(7)).derive().unwrap(), f);
        assert_eq!(f.derive().unwrap().integrate(rat(3)).truncate(6), f.truncate(6));
        assert_eq!(ExactSeries::one(0).derive(), Err(SeriesError::OrderTooLow));
    }

    #[test]
    fn division_and_domain_errors() {
        let g = ExactSeries::geometric(N);
        assert_eq!(g.mul(&one_minus(1, N)), ExactSeries::one(N));
        assert_eq!(ExactSeries::one(N).div(&one_minus(1, N)).unwrap(), g);
        let z = ExactSeries::monomial(rat(1), 1, N);
        assert_eq!(g.div(&z), Err(SeriesError::NotInvertible));
        assert_eq!(g.exp(), Err(SeriesError::ConstantNotZero));
        assert_eq!(z.log(), Err(SeriesError::ConstantNotOne));
        assert_eq!(z.sqrt_inv(), Err(SeriesError::ConstantNotOne));
    }

    #[test]
    fn pow_rational_squares_back() {
        let f = one_minus(3, 30).add(&ExactSeries::monomial(rat(5), 2, 30));
        let half = f.pow_rational(&ratio(1, 2)).unwrap();
        assert_eq!(half.mul(&half), f);
        let third = f.pow_rational(&ratio(-1, 3)).unwrap();
        assert_eq!(third.mul(&third).mul(&third).mul(&f), ExactSeries::one(30));
    }

    #[test]
    fn order_is_min_of_inputs() {
        let a = ExactSeries::geometric(10);
        let b = ExactSeries::geometric(4);
        assert_eq!(a.add(&b).order(), 4);
        assert_eq!(a.mul(&b).order(), 4);
        assert_eq!(a.integrate(rat(0)).order(), 11);
    }

    #[test]
    fn non_integral_egf() {
        let e = ExactSeries::geometric(3).scale(&ratio(1, 2));
        assert_eq!(e.egf_counts(), Err(SeriesError::NotIntegral { index: 0 }));
    }

    #[test]
    fn poly_series_sqrt_inv_at_u_one() {
        let order = 12;
        let mut c = vec![Poly::default(); order + 1];
        c[0] = Poly::from_ints([1]);
        c[1] = Poly::from_ints([-2]);
        c[2] = Poly::from_ints([1, -1]);
        let s = PolySeries::from_coeffs(c).sqrt_inv().unwrap();
        assert_eq!(s.eval_u(&rat(1)), one_minus(2, order).sqrt_inv().unwrap());
    }
}
