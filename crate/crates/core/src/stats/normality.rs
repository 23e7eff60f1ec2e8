use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::{Distribution, StatsError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalityReport {
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub ks_distance: f64,
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("valid parameters")
}

/// Kolmogorov distance between an integer-valued distribution and a
/// continuous law, with continuity correction: the empirical CDF at `k` is
/// compared with `cdf(k + 1/2)`, and its left limit with `cdf(k - 1/2)`.
pub fn lattice_ks(dist: &Distribution, cdf: impl Fn(f64) -> f64) -> f64 {
    let total = dist.total() as f64;
    let mut below = 0u64;
    let mut d: f64 = 0.0;
    for (&v, &c) in &dist.counts {
        let x = v as f64;
        d = d.max((below as f64 / total - cdf(x - 0.5)).abs());
        below += c;
        d = d.max((below as f64 / total - cdf(x + 0.5)).abs());
    }
    d
}

/// Moments of the standardized distribution and its Kolmogorov distance to
/// `N(mu, sigma^2)`.
pub fn normality_check(dist: &Distribution, mu: f64, sigma: f64) -> Result<NormalityReport, StatsError> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(StatsError::Degenerate(format!("sigma must be positive, got {sigma}")));
    }
    if dist.counts.len() < 2 {
        return Err(StatsError::Degenerate(format!("{} distinct values", dist.counts.len())));
    }
    let total = dist.total() as f64;
    let m = dist.mean();
    let central = |k: i32| dist.counts.iter().map(|(&v, &c)| (v as f64 - m).powi(k) * c as f64).sum::<f64>() / total;
    let m2 = central(2);
    let normal = std_normal();
    Ok(NormalityReport {
        skewness: central(3) / m2.powf(1.5),
        excess_kurtosis: central(4) / (m2 * m2) - 3.0,
        ks_distance: lattice_ks(dist, |x| normal.cdf((x - mu) / sigma)),
    })
}

/// [`normality_check`] for real-valued samples, without continuity correction.
pub fn normality_check_samples(values: &[f64], mu: f64, sigma: f64) -> Result<NormalityReport, StatsError> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(StatsError::Degenerate(format!("sigma must be positive, got {sigma}")));
    }
    if values.len() < 2 {
        return Err(StatsError::Degenerate(format!("{} samples", values.len())));
    }
    let mut z: Vec<f64> = values.iter().map(|v| (v - mu) / sigma).collect();
    z.sort_by(f64::total_cmp);
    let n = z.len() as f64;
    let m = z.iter().sum::<f64>() / n;
    let central = |k: i32| z.iter().map(|x| (x - m).powi(k)).sum::<f64>() / n;
    let m2 = central(2);
    if m2 == 0.0 {
        return Err(StatsError::Degenerate("all samples equal".into()));
    }
    let normal = std_normal();
    let ks_distance = z
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = normal.cdf(x);
            (f - i as f64 / n).abs().max((((i + 1) as f64) / n - f).abs())
        })
        .fold(0.0, f64::max);
    Ok(NormalityReport { skewness: central(3) / m2.powf(1.5), excess_kurtosis: central(4) / (m2 * m2) - 3.0, ks_distance })
}

/// Kolmogorov distance of `X / scale` to the standard Rayleigh law
/// `1 - exp(-x^2 / 2)`, with continuity correction on the integer values of `X`.
pub fn rayleigh_ks(dist: &Distribution, scale: f64) -> f64 {
    lattice_ks(dist, |x| {
        let y = (x / scale).max(0.0);
        1.0 - (-y * y / 2.0).exp()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{ParamId, Provenance};

    #[test]
    fn quantile_fixture_is_normal() {
        let normal = std_normal();
        let n = 10_000;
        let values: Vec<f64> = (0..n).map(|i| 3.0 + 2.0 * normal.inverse_cdf((i as f64 + 0.5) / n as f64)).collect();
        let r = normality_check_samples(&values, 3.0, 2.0).unwrap();
        assert!(r.ks_distance < 0.005, "{r:?}");
        assert!(r.skewness.abs() < 1e-9);
        assert!(r.excess_kurtosis.abs() < 0.05, "{r:?}");
    }

    #[test]
    fn degenerate_inputs() {
        let mut d = Distribution::empty(ParamId::Height, 3, Provenance::Exhaustive);
        d.counts.insert(2, 10);
        assert!(normality_check(&d, 2.0, 1.0).is_err());
        d.counts.insert(3, 10);
        assert!(normality_check(&d, 2.0, 0.0).is_err());
        assert!(normality_check(&d, 2.5, 0.5).is_ok());
    }

    #[test]
    fn binomial_lattice_ks_is_small() {
        // Binomial(400, 1/2) against its normal approximation
        let mut d = Distribution::empty(ParamId::Height, 0, Provenance::Exhaustive);
        let n = 400u64;
        let mut p = 0.5f64.powi(400);
        for k in 0..=n {
            d.counts.insert(k, (p * 1e9).round() as u64);
            p *= (n - k) as f64 / (k + 1) as f64;
        }
        let r = normality_check(&d, 200.0, 10.0).unwrap();
        assert!(r.ks_distance < 0.01, "{r:?}");
    }
}
