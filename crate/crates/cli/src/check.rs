//! Verification suites behind `arbo check`.

use std::fmt;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use arbo::bijection::{increasing_to_relaxed, relaxed_to_increasing};
use arbo::enumerate::{count_all, partition, Codes, SizeGuard};
use arbo::series::{branch_polynomials, egf_counts, level0_polynomials, root_degree_count, Poly};
use arbo::stats::{exact_distribution, ParamId};
use arbo::subclass::{count_members, SubclassId};
use arbo::trees::decode;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Roundtrip,
    Counts,
    Subclasses,
    Distributions,
}

pub struct Row {
    pub suite: &'static str,
    pub size: usize,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{:<13} n={:<3} {status}  {}", self.suite, self.size, self.detail)
    }
}

fn row(suite: &'static str, size: usize, pass: bool, detail: impl Into<String>) -> Row {
    Row { suite, size, pass, detail: detail.into() }
}

/// Trees of size `n` whose two bijection compositions are not the identity.
fn roundtrip_failures(n: usize) -> u64 {
    partition(n, rayon::current_num_threads() * 4)
        .into_par_iter()
        .map(|(a, b)| {
            Codes::range(n, a, b)
                .filter(|code| {
                    let t = decode(code);
                    let r = increasing_to_relaxed(&t);
                    let back = relaxed_to_increasing(&r).expect("image is valid");
                    let again = increasing_to_relaxed(&back);
                    back.to_json() != t.to_json() || again.to_json() != r.to_json()
                })
                .count() as u64
        })
        .sum()
}

fn coeffs_match(counts: &std::collections::BTreeMap<u64, u64>, p: &Poly) -> bool {
    let degree = p.degree().unwrap_or(0);
    counts.keys().all(|&k| k as usize <= degree)
        && (0..=degree).all(|k| {
            let c = counts.get(&(k as u64)).copied().unwrap_or(0);
            p.coeff(k) == BigRational::from_integer(c.into())
        })
}

pub fn run(suite: Suite, max_size: usize, guard: SizeGuard) -> Vec<Row> {
    let mut rows = Vec::new();
    match suite {
        Suite::Roundtrip => {
            for n in 0..=max_size {
                let bad = roundtrip_failures(n);
                rows.push(row("roundtrip", n, bad == 0, format!("{bad} failures over {} trees", count_all(n))));
            }
        }
        Suite::Counts => {
            for n in 0..=max_size {
                let expected = count_all(n);
                let inc = arbo::enumerate::enumerate_increasing(n, guard).map(|it| it.count());
                let rel = arbo::enumerate::enumerate_relaxed(n, guard).map(|it| it.count());
                let pass = match (&inc, &rel) {
                    (Ok(a), Ok(b)) => expected == (*a).into() && expected == (*b).into(),
                    _ => false,
                };
                let show = |r: &Result<usize, _>| r.as_ref().map_or("refused".to_string(), usize::to_string);
                let detail = format!("increasing {}, relaxed {}, expected {expected}", show(&inc), show(&rel));
                rows.push(row("counts", n, pass, detail));
            }
        }
        Suite::Subclasses => {
            let series: Vec<Vec<BigInt>> =
                SubclassId::ALL.iter().map(|&c| egf_counts(c, max_size).expect("catalog class")).collect();
            for n in 0..=max_size {
                match count_members(n, &SubclassId::ALL, guard) {
                    Ok(counts) => {
                        let bad: Vec<String> = SubclassId::ALL
                            .iter()
                            .zip(&counts)
                            .zip(&series)
                            .filter(|((_, &k), s)| BigInt::from(k) != s[n])
                            .map(|((c, k), s)| format!("{c}: {k} vs {}", s[n]))
                            .collect();
                        let detail = if bad.is_empty() { "22 classes agree with series".into() } else { bad.join(", ") };
                        rows.push(row("subclasses", n, bad.is_empty(), detail));
                    }
                    Err(e) => rows.push(row("subclasses", n, false, e.to_string())),
                }
            }
        }
        Suite::Distributions => {
            let level0 = level0_polynomials(max_size);
            let branch = branch_polynomials(max_size);
            for n in 0..=max_size {
                let mut problems = Vec::new();
                let dist = |p| exact_distribution(p, n, guard);
                match (dist(ParamId::Level0Nodes), dist(ParamId::Branches), dist(ParamId::RootDegree), dist(ParamId::LeafCount)) {
                    (Ok(l0), Ok(br), Ok(rd), Ok(leaf)) => {
                        if !coeffs_match(&l0.counts, &level0[n]) {
                            problems.push("level-0 nodes differ from r_n(u)".to_string());
                        }
                        if !coeffs_match(&br.counts, &branch[n]) {
                            problems.push("branches differ from s_n(u)".to_string());
                        }
                        let m = n as u64 + 1;
                        for k in 1..m {
                            let formula = root_degree_count(m, k).expect("in domain");
                            let seen = BigInt::from(rd.counts.get(&k).copied().unwrap_or(0));
                            if formula != seen {
                                problems.push(format!("root degree {k}: {seen} vs {formula}"));
                            }
                        }
                        if n >= 1 {
                            let expected = BigRational::new((2 * n as i64 + 1).into(), 3.into());
                            if leaf.exact_mean() != Some(expected.clone()) {
                                problems.push(format!("leaf mean {:?} vs {expected}", leaf.exact_mean()));
                            }
                        }
                    }
                    _ => problems.push("size guard refused enumeration".into()),
                }
                let pass = problems.is_empty();
                let detail = if pass { "level-0, branches, root degree, leaf mean".into() } else { problems.join("; ") };
                rows.push(row("distributions", n, pass, detail));
            }
        }
    }
    rows
}
