//! Generating functions of the whole family and of every subclass.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{fibonacci, ExactSeries, SeriesError};
use crate::subclass::SubclassId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Toggle {
    Allowed,
    Forbidden,
}

impl Toggle {
    pub fn allowed(self) -> bool {
        self == Toggle::Allowed
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CherryPointers {
    Two,
    /// Both pointers of every cherry share one target.
    One,
}

/// Structural template of a class of relaxed trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClassSpec {
    pub initial_sequence: Toggle,
    pub final_sequence: Toggle,
    pub level0_gaps: Toggle,
    pub level1_sequences: Toggle,
    pub cherry_pointers: CherryPointers,
    pub contains_empty: bool,
}

impl ClassSpec {
    /// The unrestricted family.
    pub const ALL: ClassSpec = ClassSpec {
        initial_sequence: Toggle::Allowed,
        final_sequence: Toggle::Allowed,
        level0_gaps: Toggle::Allowed,
        level1_sequences: Toggle::Allowed,
        cherry_pointers: CherryPointers::Two,
        contains_empty: true,
    };

    const fn new(init: bool, fin: bool, gaps: bool, lvl1: bool, two: bool) -> Self {
        const fn t(b: bool) -> Toggle {
            if b {
                Toggle::Allowed
            } else {
                Toggle::Forbidden
            }
        }
        ClassSpec {
            initial_sequence: t(init),
            final_sequence: t(fin),
            level0_gaps: t(gaps),
            level1_sequences: t(lvl1),
            cherry_pointers: if two { CherryPointers::Two } else { CherryPointers::One },
            contains_empty: true,
        }
    }

    pub fn of(id: SubclassId) -> Self {
        use SubclassId::*;
        const A: bool = true;
        const X: bool = false;
        match id {
            R1 => Self::new(X, A, A, A, A),
            R2 => Self::new(A, X, A, A, A),
            R3 => Self::new(X, X, A, A, A),
            R4 => Self::new(A, A, A, X, A),
            R5 => Self::new(X, X, X, A, A),
            R6 => Self::new(X, X, X, X, A),
            R7 => Self::new(A, X, X, X, A),
            R8 => Self::new(X, A, X, X, A),
            R9 => Self::new(A, A, X, X, A),
            R10 | T1 => Self::new(A, A, A, A, X),
            T2 => Self::new(A, X, A, A, X),
            T3 => Self::new(X, A, A, A, X),
            T4 => Self::new(X, X, X, A, X),
            T5 => Self::new(A, A, A, X, X),
            T6 => Self::new(X, A, A, X, X),
            T7 => Self::new(A, X, A, X, X),
            T8 => Self::new(X, X, A, X, X),
            T9 => Self::new(X, X, X, X, X),
            T10 => Self::new(A, X, X, X, X),
            T11 => Self::new(X, A, X, X, X),
            T12 => Self::new(A, A, X, X, X),
        }
    }

    /// Whether a nonempty tree without branch nodes (a bare level-0 spine)
    /// belongs to the class. With gaps allowed the spine must be readable as
    /// both an initial and a final run; without gaps either reading suffices.
    pub fn spine_only_allowed(&self) -> bool {
        let (i, f) = (self.initial_sequence.allowed(), self.final_sequence.allowed());
        if self.level0_gaps.allowed() {
            i && f
        } else {
            i || f
        }
    }
}

/// The whole family or one subclass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    All,
    Class(SubclassId),
}

impl Family {
    pub fn spec(self) -> ClassSpec {
        match self {
            Family::All => ClassSpec::ALL,
            Family::Class(id) => ClassSpec::of(id),
        }
    }
}

impl From<SubclassId> for Family {
    fn from(id: SubclassId) -> Self {
        Family::Class(id)
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            Ok(Family::All)
        } else {
            s.parse().map(Family::Class)
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::All => write!(f, "ALL"),
            Family::Class(id) => write!(f, "{id}"),
        }
    }
}

fn one_or_geometric(t: bool, order: usize) -> ExactSeries {
    if t {
        ExactSeries::geometric(order)
    } else {
        ExactSeries::one(order)
    }
}

/// Solves `B = f + g * int(h * z * D(B))` coefficient by coefficient and
/// returns `s + g_init * int(h * z * D(B))`, where each of `f, g, g_init, h`
/// is `1/(1-z)` or `1` by the toggles, `s` accounts for bare spines, and
/// `D(F) = (zF)'` for two cherry pointers or `F` for one.
pub fn solve_class_ode(spec: ClassSpec, order: usize) -> Result<ExactSeries, SeriesError> {
    if !spec.contains_empty {
        return Err(SeriesError::Domain("class template requires the size-0 tree".into()));
    }
    let f = one_or_geometric(spec.final_sequence.allowed(), order);
    let g = one_or_geometric(spec.level0_gaps.allowed(), order);
    let g_init = one_or_geometric(spec.initial_sequence.allowed(), order);
    let h = one_or_geometric(spec.level1_sequences.allowed(), order);
    let s = one_or_geometric(spec.spine_only_allowed(), order);
    let two = spec.cherry_pointers == CherryPointers::Two;

    let zero = BigRational::zero();
    let mut d: Vec<BigRational> = Vec::with_capacity(order + 1);
    let mut p: Vec<BigRational> = Vec::with_capacity(order + 1);
    let mut integral: Vec<BigRational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        integral.push(if n == 0 { zero.clone() } else { &p[n - 1] / BigRational::from_integer(n.into()) });
        let mut bn = f.coeff(n).clone();
        for j in 1..=n {
            let gj = g.coeff(n - j);
            if !gj.is_zero() {
                bn += gj * &integral[j];
            }
        }
        d.push(if two { bn * BigRational::from_integer((n + 1).into()) } else { bn });
        // p = h * (z * D)
        let mut pn = zero.clone();
        for i in 1..=n {
            let hi = h.coeff(n - i);
            if !hi.is_zero() {
                pn += hi * &d[i - 1];
            }
        }
        p.push(pn);
    }
    let integral = ExactSeries::from_coeffs(integral);
    Ok(s.add(&g_init.mul(&integral)))
}

fn poly(coeffs: &[i64], order: usize) -> ExactSeries {
    let mut c = vec![0; order + 1];
    for (k, &v) in coeffs.iter().enumerate().take(order + 1) {
        c[k] = v;
    }
    ExactSeries::from_ints(c)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn third() -> BigRational {
    BigRational::new(1.into(), 3.into())
}

/// `exp(sum_{n>=1} a_n z^n / n)`.
fn exp_of_weighted(order: usize, a: impl Fn(u64) -> BigInt) -> Result<ExactSeries, SeriesError> {
    let c = (0..=order)
        .map(|n| if n == 0 { BigRational::zero() } else { BigRational::new(a(n as u64), (n as i64).into()) })
        .collect();
    ExactSeries::from_coeffs(c).exp()
}

/// Closed form of the exponential generating function, where one is known.
/// Table 2's "Long" rows return `None`.
pub fn closed_form(family: Family, order: usize) -> Result<Option<ExactSeries>, SeriesError> {
    use SubclassId::*;
    let n = order;
    let r = || poly(&[1, -2], n).sqrt_inv();
    let r6 = || poly(&[1, 0, -1], n).sqrt_inv();
    let one_minus_z = || poly(&[1, -1], n);
    let geo = || ExactSeries::geometric(n);
    let e_minus_z = || poly(&[0, -1], n).exp();
    let t1 = || poly(&[0, 1], n).mul(&geo()).exp();
    let r2 = || -> Result<ExactSeries, SeriesError> { Ok(r()?.scale(&third()).add(&poly(&[2, -1], n).scale(&third()))) };
    let series = match family {
        Family::All => r()?,
        Family::Class(id) => match id {
            R1 => one_minus_z().mul(&r()?),
            R2 => r2()?,
            R3 => one_minus_z().mul(&r2()?.sub(&ExactSeries::one(n))).add(&ExactSeries::one(n)),
            R4 => exp_of_weighted(n, |k| fibonacci(k + 1))?,
            R5 => exp_of_weighted(n, |k| fibonacci(k - 1))?,
            R6 => r6()?,
            R7 => r6()?.mul(&geo()),
            R8 => {
                let rational = poly(&[2, -1], n).div(&one_minus_z().mul(&one_minus_z()))?;
                r6()?.add(&rational).scale(&third())
            }
            R9 => {
                let first = r6()?.mul(&geo());
                let den = poly(&[1, 1], n).mul(&one_minus_z()).mul(&one_minus_z()).mul(&one_minus_z());
                let rational = poly(&[2, -2, -1, 3], n).div(&den)?;
                first.add(&rational).scale(&third())
            }
            R10 | T1 => t1()?,
            T3 => one_minus_z().mul(&t1()?),
            T4 | T6 => e_minus_z()?.mul(&geo()),
            T5 => e_minus_z()?.mul(&geo()).mul(&geo()),
            T7 => e_minus_z()?.scale(&rat(3)).add(&poly(&[-2, 1], n)).mul(&geo()).mul(&geo()),
            T8 => e_minus_z()?
                .scale(&rat(3))
                .sub(&poly(&[0, 0, 1], n))
                .mul(&geo())
                .sub(&ExactSeries::constant(rat(2), n)),
            T9 => poly(&[0, 0, 1], n).scale(&BigRational::new(1.into(), 2.into())).exp()?,
            T10 => poly(&[0, 0, 1], n).scale(&BigRational::new(1.into(), 2.into())).exp()?.mul(&geo()),
            T2 | T11 | T12 => return Ok(None),
        },
    };
    Ok(Some(series))
}

/// Exponential generating function to the given order: the closed form when
/// one exists, otherwise the class ODE.
pub fn egf_series(family: impl Into<Family>, order: usize) -> Result<ExactSeries, SeriesError> {
    let family = family.into();
    match closed_form(family, order)? {
        Some(s) => Ok(s),
        None => solve_class_ode(family.spec(), order),
    }
}

/// `n! [z^n]` of the class series for `n = 0..=order`.
pub fn egf_counts(family: impl Into<Family>, order: usize) -> Result<Vec<BigInt>, SeriesError> {
    egf_series(family, order)?.egf_counts()
}
