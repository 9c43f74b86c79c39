//! Value distributions of T and S: closed forms against exhaustive
//! enumeration, the rank census, and comparison reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::closed_form::{census_closed, pow2, theorem1_table, theorem2_table, Rational};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::exp_sums::SumTables;
use crate::linearized::PhiTables;
use crate::params::ParamsHeader;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    ClosedForm,
    Empirical,
}

/// A multiset of integer values, stored as value -> count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueDistribution {
    pub params: ParamsHeader,
    pub origin: Origin,
    pub entries: BTreeMap<i64, u128>,
}

impl ValueDistribution {
    pub fn new(params: ParamsHeader, origin: Origin, entries: BTreeMap<i64, u128>) -> ValueDistribution {
        ValueDistribution { params, origin, entries }
    }

    pub fn total(&self) -> u128 {
        self.entries.values().sum()
    }

    pub fn count(&self, value: i64) -> u128 {
        self.entries.get(&value).copied().unwrap_or(0)
    }

    /// sum of count * value^order
    pub fn moment(&self, order: u32) -> i128 {
        self.entries
            .iter()
            .map(|(&v, &c)| (v as i128).pow(order) * c as i128)
            .sum()
    }

    /// Values in ascending order, one `value,count` line each.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,count\n");
        for (v, c) in &self.entries {
            out.push_str(&format!("{v},{c}\n"));
        }
        out
    }
}

#[derive(Serialize)]
struct Entry {
    value: i64,
    count: u128,
}

impl Serialize for ValueDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|(&value, &count)| Entry { value, count })
            .collect();
        let mut st = serializer.serialize_struct("ValueDistribution", 4)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("origin", &self.origin)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("total", &self.total())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TStrategy {
    Naive,
    RankFast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SStrategy {
    Naive,
    Lemma2,
}

/// Dense histogram over values in [-q, q].
fn dense_hist(q: u64) -> Vec<u64> {
    vec![0u64; 2 * q as usize + 1]
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn from_dense(ctx: &Context, hist: &[u64]) -> ValueDistribution {
    let q = ctx.q() as i64;
    let entries = hist
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| (i as i64 - q, c as u128))
        .collect();
    ValueDistribution::new(ctx.params.header(), Origin::Empirical, entries)
}

fn from_map(ctx: &Context, map: BTreeMap<i64, u128>) -> ValueDistribution {
    let entries = map.into_iter().filter(|&(_, c)| c > 0).collect();
    ValueDistribution::new(ctx.params.header(), Origin::Empirical, entries)
}

/// Histogram of F2 kernel dimensions of phi over all pairs except (0, 0).
fn kernel_histogram(ctx: &Context) -> BTreeMap<u32, u64> {
    let tables = PhiTables::new(ctx);
    let q = ctx.q() as u32;
    let n = ctx.n() as usize;
    let hist = (0..q)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut h, a| {
                let start = if a == 0 { 1 } else { 0 };
                for b in start..q {
                    h[tables.kernel_dim(a, b) as usize] += 1;
                }
                h
            },
        )
        .reduce(|| vec![0u64; n + 1], merge);
    hist.into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(w, c)| (w as u32, c))
        .collect()
}

/// T(alpha, beta) over all 2^(2n) pairs, (0, 0) included.
pub fn empirical_t_distribution(ctx: &Context, strategy: TStrategy) -> Result<ValueDistribution> {
    let q = ctx.q();
    match strategy {
        TStrategy::Naive => {
            ctx.guard("naive T enumeration", 12)?;
            let tables = SumTables::new(ctx)?;
            let hist = (0..q as u32)
                .into_par_iter()
                .fold(
                    || dense_hist(q),
                    |mut h, a| {
                        for b in 0..q as u32 {
                            h[(tables.t(a, b) + q as i64) as usize] += 1;
                        }
                        h
                    },
                )
                .reduce(|| dense_hist(q), merge);
            Ok(from_dense(ctx, &hist))
        }
        TStrategy::RankFast if ctx.params.s_even => {
            ctx.guard("rank-based T enumeration", 16)?;
            let mut map = BTreeMap::new();
            map.insert(q as i64, 1u128);
            for (w, c) in kernel_histogram(ctx) {
                *map.entry(crate::exp_sums::t_value_from_kernel(ctx, w)).or_default() += c as u128;
            }
            Ok(from_map(ctx, map))
        }
        TStrategy::RankFast => {
            // n/d odd: the rank fixes |T| up to a zero/sign choice that needs a character sum
            ctx.guard("rank-based T enumeration for n/d odd", 12)?;
            let phi = PhiTables::new(ctx);
            let sums = SumTables::new(ctx)?;
            let n = ctx.n();
            let hist = (0..q as u32)
                .into_par_iter()
                .fold(
                    || dense_hist(q),
                    |mut h, a| {
                        for b in 0..q as u32 {
                            let t = sums.t(a, b);
                            if a != 0 || b != 0 {
                                let w = phi.kernel_dim(a, b);
                                assert!(
                                    t == 0 || t.unsigned_abs() == 1u64 << ((n + w) / 2),
                                    "T({a}, {b}) = {t} inconsistent with kernel dimension {w}"
                                );
                            }
                            h[(t + q as i64) as usize] += 1;
                        }
                        h
                    },
                )
                .reduce(|| dense_hist(q), merge);
            Ok(from_dense(ctx, &hist))
        }
    }
}

/// Multiset of S(alpha, beta, gamma) over gamma for a pair with kernel
/// dimension w, (alpha, beta) != (0, 0): value 0 on q - 2^(n-w) points and
/// +-2^((n+w)/2) with the positive sign on (2^(n-w) + 2^((n-w)/2)) / 2.
pub fn gamma_profile(n: u32, w: u32) -> [(i64, u64); 3] {
    let q = 1u64 << n;
    let nonzero = 1u64 << (n - w);
    let half = 1u64 << ((n - w) / 2);
    let big = 1i64 << ((n + w) / 2);
    [(0, q - nonzero), (big, (nonzero + half) / 2), (-big, (nonzero - half) / 2)]
}

/// S(alpha, beta, gamma) over all 2^(3n) triples.
pub fn empirical_s_distribution(ctx: &Context, strategy: SStrategy) -> Result<ValueDistribution> {
    let q = ctx.q();
    match strategy {
        SStrategy::Naive => {
            ctx.guard("naive S enumeration", 8)?;
            let tables = SumTables::new(ctx)?;
            let words = tables.words();
            let hist = (0..q as u32)
                .into_par_iter()
                .fold(
                    || (dense_hist(q), vec![0u64; words]),
                    |(mut h, mut row), a| {
                        for b in 0..q as u32 {
                            tables.pair_row(a, b, &mut row);
                            for g in 0..q as u32 {
                                h[(tables.s_with_row(&row, g) + q as i64) as usize] += 1;
                            }
                        }
                        (h, row)
                    },
                )
                .map(|(h, _)| h)
                .reduce(|| dense_hist(q), merge);
            Ok(from_dense(ctx, &hist))
        }
        SStrategy::Lemma2 => {
            ctx.guard("lemma2 S enumeration", 16)?;
            let mut map = BTreeMap::new();
            // (0, 0, gamma): q at gamma = 0, and a balanced trace otherwise
            map.insert(q as i64, 1u128);
            *map.entry(0).or_default() += (q - 1) as u128;
            for (w, pairs) in kernel_histogram(ctx) {
                for (v, c) in gamma_profile(ctx.n(), w) {
                    *map.entry(v).or_default() += c as u128 * pairs as u128;
                }
            }
            Ok(from_map(ctx, map))
        }
    }
}

/// S(alpha, beta, gamma) over all pairs for one fixed gamma.
pub fn s_slice_distribution(ctx: &Context, gamma: u32) -> Result<ValueDistribution> {
    ctx.guard("S slice enumeration", 12)?;
    let q = ctx.q();
    let tables = SumTables::new(ctx)?;
    let words = tables.words();
    let hist = (0..q as u32)
        .into_par_iter()
        .fold(
            || (dense_hist(q), vec![0u64; words]),
            |(mut h, mut row), a| {
                for b in 0..q as u32 {
                    tables.pair_row(a, b, &mut row);
                    h[(tables.s_with_row(&row, gamma) + q as i64) as usize] += 1;
                }
                (h, row)
            },
        )
        .map(|(h, _)| h)
        .reduce(|| dense_hist(q), merge);
    Ok(from_dense(ctx, &hist))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedCount {
    pub eps: i8,
    pub i: u32,
    pub count: u64,
}

/// Pairs (alpha, beta) != (0, 0) grouped by the rank deficiency i (rank s - i).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCensus {
    pub params: ParamsHeader,
    pub n_i: BTreeMap<u32, u64>,
    /// Pairs with T = eps 2^((n + i d)/2); filled for n/d odd when n <= 12.
    pub n_eps_i: Vec<SignedCount>,
    /// n/d even: the unique solution of the four moment equations.
    pub solved: Option<BTreeMap<u32, i128>>,
    /// n/d even: the enumerated counts satisfy all four equations.
    pub equations_hold: Option<bool>,
}

impl RankCensus {
    pub fn get(&self, i: u32) -> u64 {
        self.n_i.get(&i).copied().unwrap_or(0)
    }
}

/// Coefficients and right-hand sides of the four equations in n_0, n_2,
/// n_4, n_6 obtained from the first moments of T when n/d is even.
pub fn census_system(ctx: &Context) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let p = &ctx.params;
    let mu = p
        .mu
        .ok_or_else(|| Error::Unsupported("n/d even for the census system".into()))? as i64;
    let (n, d, m) = (p.n as i64, p.d as i64, p.m.unwrap() as i64);
    let mu = Rational::from_integer(BigInt::from(mu));
    let q1 = pow2(n) - Rational::one();
    // row j: sum_i (-2^d)^(j i / 2) n_i
    let neg = -pow2(d);
    let mut a = Vec::new();
    for j in 0..4u32 {
        let mut row = Vec::new();
        for i in [0u32, 1, 2, 3] {
            let mut x = Rational::one();
            for _ in 0..(i * j) {
                x *= &neg;
            }
            row.push(x);
        }
        a.push(row);
    }
    let rhs = vec![
        pow2(2 * n) - Rational::one(),
        &mu * pow2(m) * &q1,
        pow2(n) * (pow2(d) + Rational::one()) * &q1,
        &mu * pow2(m + 3 * d) * &q1,
    ];
    Ok((a, rhs))
}

/// Gaussian elimination over the rationals; `None` when singular.
pub fn solve_rational(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = &a[r][col] / &a[col][col];
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &factor * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

pub fn rank_census(ctx: &Context) -> Result<RankCensus> {
    ctx.guard("rank census", 16)?;
    let p = &ctx.params;
    let n_i: BTreeMap<u32, u64> = kernel_histogram(ctx)
        .into_iter()
        .map(|(w, c)| (w / p.d, c))
        .collect();
    let mut census = RankCensus {
        params: p.header(),
        n_i,
        n_eps_i: Vec::new(),
        solved: None,
        equations_hold: None,
    };
    if p.s_even {
        let (a, rhs) = census_system(ctx)?;
        let solution = solve_rational(a.clone(), rhs.clone())
            .ok_or_else(|| Error::Unsupported("a nonsingular census system".into()))?;
        census.solved = Some(
            solution
                .iter()
                .enumerate()
                .filter(|(_, v)| v.is_integer())
                .map(|(j, v)| (2 * j as u32, v.to_integer().to_i128().unwrap_or(i128::MAX)))
                .collect(),
        );
        let hold = a.iter().zip(&rhs).all(|(row, r)| {
            let lhs: Rational = row
                .iter()
                .enumerate()
                .map(|(j, c)| c * Rational::from_integer(BigInt::from(census.get(2 * j as u32))))
                .sum();
            &lhs == r
        });
        census.equations_hold = Some(hold);
    } else if p.n <= 12 || ctx.allow_large {
        let sums = SumTables::new(ctx)?;
        let phi = PhiTables::new(ctx);
        let q = ctx.q() as u32;
        let mut counts: BTreeMap<(i8, u32), u64> = BTreeMap::new();
        for a in 0..q {
            for b in 0..q {
                if a == 0 && b == 0 {
                    continue;
                }
                let t = sums.t(a, b);
                if t != 0 {
                    let i = phi.kernel_dim(a, b) / p.d;
                    *counts.entry((t.signum() as i8, i)).or_default() += 1;
                }
            }
        }
        census.n_eps_i = counts
            .into_iter()
            .map(|((eps, i), count)| SignedCount { eps, i, count })
            .collect();
    }
    Ok(census)
}

/// The census counts implied by the closed-form tables agree with `census`.
pub fn census_matches_closed(ctx: &Context, census: &RankCensus) -> bool {
    census_closed(&ctx.params).iter().all(|(i, c)| {
        c.is_integer() && !c.is_negative() && c.to_integer().to_u64() == Some(census.get(*i))
    }) && census.n_i.keys().all(|i| census_closed(&ctx.params).contains_key(i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub value: i64,
    pub closed: u128,
    pub empirical: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// Enumeration ran but the tables do not apply (degenerate parameters).
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributionReport {
    pub params: ParamsHeader,
    pub closed: ValueDistribution,
    pub empirical: ValueDistribution,
    pub diffs: Vec<Diff>,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl DistributionReport {
    fn restatus(&mut self) {
        if self.status != Status::Uncertified {
            let ok = self.diffs.is_empty() && self.checks.iter().all(|c| c.pass);
            self.status = if ok { Status::Pass } else { Status::Fail };
        }
    }

    pub fn push_check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail,
        });
        self.restatus();
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn compare(closed: &ValueDistribution, empirical: &ValueDistribution) -> Result<DistributionReport> {
    if closed.params != empirical.params {
        return Err(Error::ParamMismatch);
    }
    let mut diffs = Vec::new();
    let keys: std::collections::BTreeSet<i64> = closed.entries.keys().chain(empirical.entries.keys()).copied().collect();
    for value in keys {
        let (c, e) = (closed.count(value), empirical.count(value));
        if c != e {
            diffs.push(Diff {
                value,
                closed: c,
                empirical: e,
            });
        }
    }
    let mut report = DistributionReport {
        params: closed.params,
        closed: closed.clone(),
        empirical: empirical.clone(),
        diffs,
        checks: Vec::new(),
        status: Status::Pass,
    };
    report.push_check(
        "total",
        closed.total() == empirical.total(),
        format!("closed {} / empirical {}", closed.total(), empirical.total()),
    );
    Ok(report)
}

fn finish_report(ctx: &Context, mut report: DistributionReport, scale_exp: u32) -> DistributionReport {
    let total = report.empirical.total();
    report.push_check(
        "total is 2^(jn)",
        total == 1u128 << (scale_exp * ctx.n()),
        format!("{total}"),
    );
    let m1 = report.empirical.moment(1);
    let expect = 1i128 << (scale_exp * ctx.n());
    report.push_check("first moment", m1 == expect, format!("{m1} vs {expect}"));
    if ctx.params.code_degenerate {
        report.status = Status::Uncertified;
    }
    report
}

/// Closed-form table for T against an enumeration.
pub fn t_report(ctx: &Context, strategy: TStrategy) -> Result<DistributionReport> {
    let empirical = empirical_t_distribution(ctx, strategy)?;
    let closed = theorem1_table(&ctx.params).to_distribution(&ctx.params)?;
    Ok(finish_report(ctx, compare(&closed, &empirical)?, 2))
}

/// Closed-form table for S against an enumeration.
pub fn s_report(ctx: &Context, strategy: SStrategy) -> Result<DistributionReport> {
    let empirical = empirical_s_distribution(ctx, strategy)?;
    let closed = theorem2_table(&ctx.params).to_distribution(&ctx.params)?;
    Ok(finish_report(ctx, compare(&closed, &empirical)?, 3))
}
