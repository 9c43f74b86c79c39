//! Closed-form value distributions of T, S and of the correlation values of
//! the sequence family, evaluated in exact rational arithmetic.
//!
//! Every multiplicity is built as a rational and only converted to an
//! integer after checking that it is one; nothing is rounded.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::distributions::{Origin, ValueDistribution};
use crate::error::{Error, Result};
use crate::params::ParamSet;

pub type Rational = BigRational;

/// 2^e for any integer e.
pub fn pow2(e: i64) -> Rational {
    let one = BigInt::one();
    if e >= 0 {
        Rational::from_integer(one << e as usize)
    } else {
        Rational::new(one.clone(), one << (-e) as usize)
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// One row of a closed-form table.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub label: &'static str,
    pub value: i64,
    pub count: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedTable {
    pub rows: Vec<TableRow>,
}

impl ClosedTable {
    /// Exact integer count of a row, or an error naming the row.
    pub fn row_count(row: &TableRow) -> Result<u128> {
        if !row.count.is_integer() || row.count.is_negative() {
            return Err(Error::NonIntegral {
                row: row.label.into(),
                value: row.count.to_string(),
            });
        }
        row.count.to_integer().to_u128().ok_or_else(|| Error::NonIntegral {
            row: row.label.into(),
            value: row.count.to_string(),
        })
    }

    /// The multiset; rows with equal values are merged and zero rows dropped.
    pub fn to_distribution(&self, params: &ParamSet) -> Result<ValueDistribution> {
        let mut entries = BTreeMap::new();
        for row in &self.rows {
            let c = Self::row_count(row)?;
            if c > 0 {
                *entries.entry(row.value).or_insert(0u128) += c;
            }
        }
        Ok(ValueDistribution::new(params.header(), Origin::ClosedForm, entries))
    }
}

/// Shorthand for the exponents that recur in every table.
struct Sym {
    n: i64,
    d: i64,
    m: i64,
    mu: i64,
}

impl Sym {
    fn new(p: &ParamSet) -> Sym {
        Sym {
            n: p.n as i64,
            d: p.d as i64,
            m: p.m.unwrap_or(0) as i64,
            mu: p.mu.unwrap_or(1) as i64,
        }
    }

    fn q_minus_1(&self) -> Rational {
        pow2(self.n) - int(1)
    }
}

/// Value distribution of T(alpha, beta) over all pairs.
pub fn theorem1_table(p: &ParamSet) -> ClosedTable {
    let y = Sym::new(p);
    let (n, d, m, mu) = (y.n, y.d, y.m, int(y.mu));
    let q1 = y.q_minus_1();
    let rows = if !p.s_even {
        let h = (n + d) / 2;
        vec![
            TableRow {
                label: "2^((n+d)/2)",
                value: 1 << h,
                count: (pow2(n - d - 1) + pow2((n - d - 2) / 2)) * &q1,
            },
            TableRow {
                label: "-2^((n+d)/2)",
                value: -(1 << h),
                count: (pow2(n - d - 1) - pow2((n - d - 2) / 2)) * &q1,
            },
            TableRow {
                label: "0",
                value: 0,
                count: (pow2(n) - pow2(n - d) + int(1)) * &q1,
            },
            TableRow {
                label: "2^n",
                value: 1 << n,
                count: int(1),
            },
        ]
    } else {
        let sgn = y.mu;
        let den1 = (pow2(d) + int(1)) * (pow2(2 * d) - int(1)) * (pow2(3 * d) + int(1));
        let den2 = (pow2(d) + int(1)) * (pow2(d) + int(1)) * (pow2(2 * d) - int(1));
        let den3 = (pow2(d) + int(1)) * (pow2(d) + int(1)) * (pow2(d) + int(1)) * (pow2(d) - int(1));
        vec![
            TableRow {
                label: "mu 2^m",
                value: sgn << m,
                count: &q1
                    * (pow2(n + 6 * d) - pow2(n + 4 * d) - pow2(n + d) + &mu * pow2(m + 5 * d)
                        - &mu * pow2(m + 4 * d)
                        + pow2(6 * d))
                    / &den1,
            },
            TableRow {
                label: "-mu 2^(m+d)",
                value: -sgn << (m + d),
                count: &q1
                    * (pow2(n + 3 * d) + pow2(n + 2 * d) - pow2(n) - pow2(n - d) - pow2(n - 2 * d)
                        - &mu * pow2(m + 3 * d)
                        + &mu * pow2(m)
                        + pow2(3 * d))
                    / &den2,
            },
            TableRow {
                label: "mu 2^(m+2d)",
                value: sgn << (m + 2 * d),
                count: (pow2(m - d) + &mu)
                    * (pow2(m + d) + pow2(m) - pow2(m - 2 * d) - &mu * pow2(d))
                    * &q1
                    / &den3,
            },
            TableRow {
                label: "-mu 2^(m+3d)",
                value: -sgn << (m + 3 * d),
                count: (pow2(m - 2 * d) - &mu) * (pow2(m - d) + &mu) * &q1 / &den1,
            },
            TableRow {
                label: "2^n",
                value: 1 << n,
                count: int(1),
            },
        ]
    };
    ClosedTable { rows }
}

/// Value distribution of S(alpha, beta, gamma) over all triples. For s even
/// the undeclared sign in the zero row is taken to be mu.
pub fn theorem2_table(p: &ParamSet) -> ClosedTable {
    let y = Sym::new(p);
    let (n, d, m, mu) = (y.n, y.d, y.m, int(y.mu));
    let q1 = y.q_minus_1();
    let rows = if !p.s_even {
        let a = pow2(n + 2 * d) - pow2(n) - pow2(n - d) + pow2(2 * d);
        let den = pow2(2 * d) - int(1);
        let h1 = (n + d) / 2;
        let h3 = (n + 3 * d) / 2;
        vec![
            TableRow {
                label: "2^((n+d)/2)",
                value: 1 << h1,
                count: (pow2(n - d - 1) + pow2((n - d - 2) / 2)) * &q1 * &a / &den,
            },
            TableRow {
                label: "-2^((n+d)/2)",
                value: -(1 << h1),
                count: (pow2(n - d - 1) - pow2((n - d - 2) / 2)) * &q1 * &a / &den,
            },
            TableRow {
                label: "2^((n+3d)/2)",
                value: 1 << h3,
                count: (pow2(n - 3 * d - 1) + pow2((n - 3 * d - 2).div_euclid(2)))
                    * (pow2(n - d) - int(1))
                    * &q1
                    / &den,
            },
            TableRow {
                label: "-2^((n+3d)/2)",
                value: -(1 << h3),
                count: (pow2(n - 3 * d - 1) - pow2((n - 3 * d - 2).div_euclid(2)))
                    * (pow2(n - d) - int(1))
                    * &q1
                    / &den,
            },
            TableRow {
                label: "0",
                value: 0,
                count: xi_closed(p),
            },
            TableRow {
                label: "2^n",
                value: 1 << n,
                count: int(1),
            },
        ]
    } else {
        let den1 = (pow2(d) + int(1)) * (pow2(2 * d) - int(1)) * (pow2(3 * d) + int(1));
        let den2 = (pow2(d) + int(1)) * (pow2(d) + int(1)) * (pow2(2 * d) - int(1));
        let den3 = (pow2(d) + int(1)) * (pow2(d) + int(1)) * (pow2(d) + int(1)) * (pow2(d) - int(1));
        let b1 = pow2(n + 6 * d) - pow2(n + 4 * d) - pow2(n + d) + &mu * pow2(m + 5 * d)
            - &mu * pow2(m + 4 * d)
            + pow2(6 * d);
        let b2 = pow2(n + 3 * d) + pow2(n + 2 * d) - pow2(n) - pow2(n - d) - pow2(n - 2 * d)
            - &mu * pow2(m + 3 * d)
            + &mu * pow2(m)
            + pow2(3 * d);
        let b3 = (pow2(m - d) + &mu) * (pow2(m + d) + pow2(m) - pow2(m - 2 * d) - &mu * pow2(d));
        let b4 = (pow2(m - 2 * d) - &mu) * (pow2(m - d) + &mu);
        let mut rows = Vec::new();
        let specs: [(&'static str, &'static str, i64, i64, i64, &Rational, &Rational); 4] = [
            ("2^m", "-2^m", m, n - 1, m - 1, &b1, &den1),
            ("2^(m+d)", "-2^(m+d)", m + d, n - 2 * d - 1, m - d - 1, &b2, &den2),
            ("2^(m+2d)", "-2^(m+2d)", m + 2 * d, n - 4 * d - 1, m - 2 * d - 1, &b3, &den3),
            ("2^(m+3d)", "-2^(m+3d)", m + 3 * d, n - 6 * d - 1, m - 3 * d - 1, &b4, &den1),
        ];
        for (plus, minus, e, big, small, b, den) in specs {
            rows.push(TableRow {
                label: plus,
                value: 1 << e,
                count: (pow2(big) + pow2(small)) * &q1 * b / den,
            });
            rows.push(TableRow {
                label: minus,
                value: -(1 << e),
                count: (pow2(big) - pow2(small)) * &q1 * b / den,
            });
        }
        rows.push(TableRow {
            label: "0",
            value: 0,
            count: xi_closed(p),
        });
        rows.push(TableRow {
            label: "2^n",
            value: 1 << n,
            count: int(1),
        });
        rows
    };
    ClosedTable { rows }
}

/// Number of triples with S = 0, in the closed forms given for each parity
/// of s (the s-even form uses mu for its sign parameter).
pub fn xi_closed(p: &ParamSet) -> Rational {
    let y = Sym::new(p);
    let (n, d, m) = (y.n, y.d, y.m);
    let q1 = y.q_minus_1();
    if !p.s_even {
        q1 * (pow2(2 * n) - pow2(2 * n - d) + pow2(2 * n - 4 * d) + pow2(n) - pow2(n - d) - pow2(n - 3 * d)
            + int(1))
    } else {
        let eps = int(y.mu);
        let bracket = pow2(2 * n) + pow2(2 * n - 9 * d)
            - eps
                * (pow2(3 * m) - pow2(3 * m - d) - pow2(3 * m - 3 * d) + pow2(3 * m - 5 * d) + pow2(3 * m - 7 * d)
                    - pow2(3 * m - 8 * d))
            + pow2(n)
            - pow2(n - d)
            - pow2(n - 4 * d)
            - pow2(n - 6 * d)
            + pow2(d)
            + int(1);
        q1 * bracket / (pow2(d) + int(1))
    }
}

/// Rank-census counts n_i (rank s - i) implied by the tables: n_1, n_3 for s
/// odd; n_0, n_2, n_4, n_6 for s even (one rank per T value).
pub fn census_closed(p: &ParamSet) -> BTreeMap<u32, Rational> {
    let y = Sym::new(p);
    let (n, d) = (y.n, y.d);
    let q1 = y.q_minus_1();
    let mut out = BTreeMap::new();
    if !p.s_even {
        let den = pow2(2 * d) - int(1);
        out.insert(
            1,
            &q1 * (pow2(n + 2 * d) - pow2(n) - pow2(n - d) + pow2(2 * d)) / &den,
        );
        out.insert(3, (pow2(n - d) - int(1)) * &q1 / &den);
    } else {
        let t = theorem1_table(p);
        for (i, row) in [0u32, 2, 4, 6].into_iter().zip(&t.rows) {
            out.insert(i, row.count.clone());
        }
    }
    out
}

/// Correlation-value table for the sequence family. Returned as raw rows so
/// that a non-integral or mismatching row can be reported rather than fail
/// the whole table.
pub fn theorem3_table(p: &ParamSet) -> ClosedTable {
    let y = Sym::new(p);
    let (n, d, m) = (y.n, y.d, y.m);
    let one = int(1);
    let q2n = pow2(2 * n);
    let row = |label, value: i64, count: Rational| TableRow { label, value, count };
    if !p.s_even {
        let a = pow2(n + 2 * d) - pow2(n) - pow2(n - d) + pow2(2 * d);
        let f = pow2(3 * n) - pow2(n + 1);
        let den = pow2(2 * d) - int(1);
        let h1 = (n + d) / 2;
        let h3 = (n + 3 * d) / 2;
        let small1 = pow2((n - d - 2) / 2);
        let small3 = pow2((n - 3 * d - 2).div_euclid(2));
        return ClosedTable {
            rows: vec![
                row("2^((n+d)/2)-1", (1 << h1) - 1, (pow2(n - d - 1) + &small1) * &a * &f / &den),
                row("-2^((n+d)/2)-1", -(1 << h1) - 1, (pow2(n - d - 1) - &small1) * &a * &f / &den),
                row(
                    "2^((n+3d)/2)-1",
                    (1 << h3) - 1,
                    (pow2(n - 3 * d - 1) + &small3) * (pow2(n - d) - &one) * &f / &den,
                ),
                row(
                    "-2^((n+3d)/2)-1",
                    -(1 << h3) - 1,
                    (pow2(n - 3 * d - 1) - &small3) * (pow2(n - d) - &one) * &f / &den,
                ),
                row(
                    "-1",
                    -1,
                    (pow2(2 * n) - pow2(2 * n - d) + pow2(2 * n - 4 * d) + pow2(n) - pow2(n - d) - pow2(n - 3 * d)
                        + &one)
                        * &f
                        + pow2(n),
                ),
                row("2^n-1", (1 << n) - 1, pow2(2 * n) + pow2(n)),
            ],
        };
    }
    let den1 = (pow2(d) + &one) * (pow2(2 * d) - &one) * (pow2(3 * d) + &one);
    let den2 = (pow2(d) + &one) * (pow2(d) + &one) * (pow2(2 * d) - &one);
    let den3 = (pow2(d) + &one) * (pow2(d) + &one) * (pow2(d) + &one) * (pow2(d) - &one);
    let q_2 = pow2(n) - int(2);
    let v = |e: i64| 1i64 << e;
    let rows = if p.s % 4 == 0 {
        let mu = int(y.mu);
        let c = pow2(n + 6 * d) - pow2(n + 4 * d) - pow2(n + d) + pow2(m + 5 * d) - pow2(m + 4 * d) + pow2(6 * d);
        let e = pow2(n + 3 * d) + pow2(n + 2 * d) - pow2(n) - pow2(n - d) - pow2(n - 2 * d) - pow2(m + 3 * d)
            + pow2(m)
            + pow2(3 * d);
        let g = (pow2(m - d) + &one) * (pow2(m + d) + pow2(m) - pow2(m - 2 * d) - pow2(d));
        let g_mu = (pow2(m - d) + &mu) * (pow2(m + d) + pow2(m) - pow2(m - 2 * d) - &mu * pow2(d));
        let h = (pow2(m - 2 * d) - &one) * (pow2(m - d) + &one);
        let bracket = pow2(2 * n) + pow2(2 * n - 9 * d) - pow2(3 * m)
            + pow2(3 * m - d)
            + pow2(3 * m - 3 * d)
            - pow2(3 * m - 5 * d)
            - pow2(3 * m - 7 * d)
            + pow2(3 * m - 8 * d)
            + pow2(n)
            - pow2(n - d)
            - pow2(n - 4 * d)
            - pow2(n - 6 * d)
            + pow2(d)
            + &one;
        vec![
            row(
                "2^m-1",
                v(m) - 1,
                &q2n * &c * (pow2(2 * n - 1) + pow2(3 * m - 1) - pow2(n) - pow2(m) + &one) / &den1,
            ),
            row(
                "-2^m-1",
                -v(m) - 1,
                &q2n * (pow2(n - 1) - pow2(m - 1)) * &q_2 * &c / &den1,
            ),
            row(
                "2^(m+d)-1",
                v(m + d) - 1,
                &q2n * (pow2(n - 2 * d - 1) + pow2(m - d - 1)) * &q_2 * &e / &den2,
            ),
            row(
                "-2^(m+d)-1",
                -v(m + d) - 1,
                &q2n * &e * (pow2(2 * n - 2 * d - 1) - pow2(3 * m - d - 1) - pow2(n - 2 * d) + pow2(m - d) + &one)
                    / &den2,
            ),
            row(
                "2^(m+2d)-1",
                v(m + 2 * d) - 1,
                &q2n * &g
                    * (pow2(2 * n - 4 * d - 1) + pow2(3 * m - 2 * d - 1) - pow2(n - 4 * d) - pow2(m - 2 * d) + &one)
                    / &den3,
            ),
            row(
                "-2^(m+2d)-1",
                -v(m + 2 * d) - 1,
                &q2n * &g_mu * (pow2(n - 4 * d - 1) - pow2(m - 2 * d - 1)) * &q_2 / &den3,
            ),
            row(
                "2^(m+3d)-1",
                v(m + 3 * d) - 1,
                &q2n * &h * (pow2(n - 6 * d - 1) + pow2(m - 3 * d - 1)) * &q_2 / &den1,
            ),
            row(
                "-2^(m+3d)-1",
                -v(m + 3 * d) - 1,
                &q2n * &h
                    * (pow2(2 * n - 6 * d - 1) - pow2(3 * m - 3 * d - 1) - pow2(n - 6 * d) + pow2(m - 3 * d) + &one)
                    / &den1,
            ),
            row("-1", -1, &q2n * &q_2 * bracket / (pow2(d) + &one)),
            row("2^n-1", v(n) - 1, q2n.clone()),
        ]
    } else {
        let c = pow2(n + 6 * d) - pow2(n + 4 * d) - pow2(n + d) - pow2(m + 5 * d) + pow2(m + 4 * d) + pow2(6 * d);
        let e = pow2(n + 3 * d) + pow2(n + 2 * d) - pow2(n) - pow2(n - d) - pow2(n - 2 * d) + pow2(m + 3 * d)
            - pow2(m)
            + pow2(3 * d);
        let g = (pow2(m - d) - &one) * (pow2(m + d) + pow2(m) - pow2(m - 2 * d) + pow2(d));
        let h = (pow2(m - 2 * d) + &one) * (pow2(m - d) - &one);
        let bracket = pow2(2 * n) + pow2(2 * n - 9 * d) + pow2(3 * m)
            - pow2(3 * m - d)
            - pow2(3 * m - 3 * d)
            + pow2(3 * m - 5 * d)
            + pow2(3 * m - 7 * d)
            - pow2(3 * m - 8 * d)
            + pow2(n)
            - pow2(n - d)
            - pow2(n - 4 * d)
            - pow2(n - 6 * d)
            + pow2(d)
            + &one;
        vec![
            row(
                "2^m-1",
                v(m) - 1,
                &q2n * (pow2(n - 1) + pow2(m - 1)) * &q_2 * &c / &den1,
            ),
            row(
                "-2^m-1",
                -v(m) - 1,
                &q2n * &c * (pow2(2 * n - 1) - pow2(3 * m - 1) - pow2(n) + pow2(m) + &one) / &den1,
            ),
            row(
                "2^(m+d)-1",
                v(m + d) - 1,
                &q2n * &e * (pow2(2 * n - 2 * d - 1) + pow2(3 * m - d - 1) - pow2(n - 2 * d) - pow2(m - d) + &one)
                    / &den2,
            ),
            row(
                "-2^(m+d)-1",
                -v(m + d) - 1,
                &q2n * (pow2(n - 2 * d - 1) - pow2(m - d - 1)) * &q_2 * &e / &den2,
            ),
            row(
                "2^(m+2d)-1",
                v(m + 2 * d) - 1,
                &q2n * &g * (pow2(n - 4 * d - 1) + pow2(m - 2 * d - 1)) * &q_2 / &den3,
            ),
            row(
                "-2^(m+2d)-1",
                -v(m + 2 * d) - 1,
                &q2n * &g
                    * (pow2(2 * n - 4 * d - 1) - pow2(3 * m - 2 * d - 1) - pow2(n - 4 * d) + pow2(m - 2 * d) + &one)
                    / &den3,
            ),
            row(
                "2^(m+3d)-1",
                v(m + 3 * d) - 1,
                &q2n * &h
                    * (pow2(2 * n - 6 * d - 1) - pow2(3 * m - 3 * d - 1) - pow2(n - 6 * d) + pow2(m - 3 * d) + &one)
                    / &den1,
            ),
            row(
                "-2^(m+3d)-1",
                -v(m + 3 * d) - 1,
                &q2n * &h * (pow2(n - 6 * d - 1) - pow2(m - 3 * d - 1)) * &q_2 / &den1,
            ),
            row("-1", -1, &q2n * &q_2 * bracket / (pow2(d) + &one)),
            row("2^n-1", v(n) - 1, q2n.clone()),
        ]
    };
    ClosedTable { rows }
}

/// The correlation table with the corrections that enumeration forces.
///
/// n/d odd: every sequence has q^3 - 2 = |F|(q - 1) - 1 partner (sequence,
/// shift) combinations besides its own shift 0, so the factor 2^(3n) - 2^(n+1)
/// becomes 2^(3n) - 2, the stray +2^n in the -1 row goes, and 2^n - 1 occurs
/// |F| = 2^(2n) + 2^n + 1 times.
/// n/d = 2 mod 4: the row for 2^(m+3d) - 1 takes the opposite signs on its
/// 2^(3m-3d-1) and 2^(m-3d) terms.
pub fn theorem3_corrected_table(p: &ParamSet) -> ClosedTable {
    let y = Sym::new(p);
    let (n, d, m) = (y.n, y.d, y.m);
    let one = int(1);
    let mut table = theorem3_table(p);
    if !p.s_even {
        let old = pow2(3 * n) - pow2(n + 1);
        let new = pow2(3 * n) - int(2);
        for row in table.rows.iter_mut() {
            match row.label {
                "2^n-1" => row.count = pow2(2 * n) + pow2(n) + &one,
                "-1" => row.count = (&row.count - pow2(n)) / &old * &new,
                _ => row.count = &row.count / &old * &new,
            }
        }
    } else if p.s % 4 == 2 {
        let den1 = (pow2(d) + &one) * (pow2(2 * d) - &one) * (pow2(3 * d) + &one);
        let h = (pow2(m - 2 * d) + &one) * (pow2(m - d) - &one);
        for row in table.rows.iter_mut().filter(|r| r.label == "2^(m+3d)-1") {
            row.count = pow2(2 * n)
                * &h
                * (pow2(2 * n - 6 * d - 1) + pow2(3 * m - 3 * d - 1) - pow2(n - 6 * d) - pow2(m - 3 * d) + &one)
                / &den1;
        }
    }
    table
}

/// Reference rows of known low-correlation families, for comparison output.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ReferenceFamily {
    pub name: &'static str,
    pub n_parity: &'static str,
    pub period: &'static str,
    pub family_size: &'static str,
    pub cmax: &'static str,
}

pub const REFERENCE_FAMILIES: [ReferenceFamily; 5] = [
    ReferenceFamily {
        name: "Gold",
        n_parity: "odd",
        period: "2^n-1",
        family_size: "2^n+1",
        cmax: "2^((n+1)/2)+1",
    },
    ReferenceFamily {
        name: "Rothaus",
        n_parity: "even",
        period: "2^n-1",
        family_size: "2^(2n)+2^n+1",
        cmax: "2^((n+3)/2)+1",
    },
    ReferenceFamily {
        name: "Yu-Gong, 1 < rho <= (n-1)/2",
        n_parity: "odd",
        period: "2^n-1",
        family_size: "2^(n rho)",
        cmax: "2^((n+2rho-1)/2)+1",
    },
    ReferenceFamily {
        name: "Generalized Kasami (large set)",
        n_parity: "even",
        period: "2^n-1",
        family_size: "2^(3n/2)+1",
        cmax: "2^((n+2)/2)",
    },
    ReferenceFamily {
        name: "Kasami-Welch family, d = 1",
        n_parity: "odd",
        period: "2^n-1",
        family_size: "2^(2n)+2^n+1",
        cmax: "2^((n+3)/2)+1",
    },
];

/// C_max listed for this family when d = 1 and n is odd.
pub fn reference_cmax(p: &ParamSet) -> Option<i64> {
    (p.d == 1 && p.n % 2 == 1).then(|| (1i64 << ((p.n + 3) / 2)) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_params;
    use num_traits::Zero;

    fn dist(p: &ParamSet, t: &ClosedTable) -> Vec<(i64, u128)> {
        t.to_distribution(p).unwrap().entries.into_iter().collect()
    }

    #[test]
    fn theorem1_n5() {
        let p = validate_params(5, 1).unwrap();
        assert_eq!(
            dist(&p, &theorem1_table(&p)),
            vec![(-8, 186), (0, 527), (8, 310), (32, 1)]
        );
    }

    #[test]
    fn theorem1_n8() {
        let p = validate_params(8, 1).unwrap();
        assert_eq!(
            dist(&p, &theorem1_table(&p)),
            vec![(-128, 85), (-32, 23800), (16, 38080), (64, 3570), (256, 1)]
        );
    }

    #[test]
    fn theorem2_n5() {
        let p = validate_params(5, 1).unwrap();
        let d = dist(&p, &theorem2_table(&p));
        assert_eq!(
            d,
            vec![(-16, 155), (-8, 5208), (0, 18259), (8, 8680), (16, 465), (32, 1)]
        );
        assert_eq!(d.iter().map(|e| e.1).sum::<u128>(), 1 << 15);
    }

    #[test]
    fn totals_over_many_parameters() {
        for n in 3..=20 {
            for k in 1..n {
                let Ok(p) = validate_params(n, k) else { continue };
                let t1 = theorem1_table(&p).to_distribution(&p).unwrap();
                assert_eq!(t1.total(), 1u128 << (2 * n), "T n={n} k={k}");
                let t2 = theorem2_table(&p).to_distribution(&p).unwrap();
                assert_eq!(t2.total(), 1u128 << (3 * n), "S n={n} k={k}");
                // first moment of T is 2^(2n)
                assert_eq!(t1.moment(1), 1i128 << (2 * n));
            }
        }
    }

    #[test]
    fn census_closed_forms() {
        let p = validate_params(5, 1).unwrap();
        let c = census_closed(&p);
        assert_eq!(c[&3], int(155));
        assert_eq!(&c[&1] + &c[&3], int(1023));
        let p = validate_params(8, 1).unwrap();
        let c = census_closed(&p);
        assert_eq!(c[&6], int(85));
    }

    #[test]
    fn theorem3_n5_rows_are_integral() {
        let p = validate_params(5, 1).unwrap();
        let t = theorem3_table(&p);
        for row in &t.rows {
            assert!(ClosedTable::row_count(row).is_ok(), "{row:?}");
        }
        assert_eq!(reference_cmax(&p), Some(17));
    }

    #[test]
    fn pow2_negative() {
        assert_eq!(pow2(-1) + pow2(-1), int(1));
        assert!((pow2(3) - int(8)).is_zero());
    }
}
