//! Validated (n, k) pairs and the constants derived from them.

use serde::{Deserialize, Serialize};

use crate::codes::cyclotomic_coset;
use crate::error::{Error, Result};
use crate::field::MAX_DEGREE;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    pub n: u32,
    pub k: u32,
    /// gcd(n, k)
    pub d: u32,
    /// 2^d
    pub q0: u64,
    /// n / d
    pub s: u32,
    /// gcd(n, 2k)
    pub d_prime: u32,
    /// n / 2 for even n
    pub m: Option<u32>,
    /// (-1)^(m/d); present when s is even (m/d is fractional otherwise)
    pub mu: Option<i8>,
    pub s_even: bool,
    /// k also avoids {n/6, 5n/6}, so the sequence family is covered.
    pub sequence_valid: bool,
    /// Some Kasami-Welch exponent has a short cyclotomic coset or two of
    /// {1, 2^k+1, 2^(3k)+1} share a coset; the code dimensions 2n and 3n fail.
    pub code_degenerate: bool,
    /// 2^(3k) + 1 reduced modulo 2^n - 1.
    pub e_cubic: u64,
    /// 2^k + 1 reduced modulo 2^n - 1.
    pub e_linear: u64,
    pub c1_dimension: u32,
    pub c2_dimension: u32,
}

/// Compact header used in serialized reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsHeader {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub s: u32,
    pub mu: Option<i8>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Returns true when k equals num/den * n exactly.
fn is_fraction_of(n: u32, k: u32, num: u32, den: u32) -> bool {
    den * k == num * n
}

pub fn validate_params(n: u32, k: u32) -> Result<ParamSet> {
    let invalid = |reason: String| Error::InvalidParams { n, k, reason };
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(invalid(format!("n must lie in 2..={MAX_DEGREE}")));
    }
    if k == 0 || k >= n {
        return Err(invalid(format!("k must lie in 1..={}", n - 1)));
    }
    for (num, den, label) in [(1, 4, "k = n/4"), (1, 2, "k = n/2"), (3, 4, "k = 3n/4")] {
        if is_fraction_of(n, k, num, den) {
            return Err(invalid(format!("{label} is excluded")));
        }
    }
    let d = gcd(n, k);
    let s = n / d;
    let d_prime = gcd(n, 2 * k);
    let s_even = s % 2 == 0;
    let m = (n % 2 == 0).then_some(n / 2);
    // m/d is an integer exactly when s is even
    let mu = m
        .filter(|_| s_even)
        .map(|m| if (m / d) % 2 == 0 { 1 } else { -1 });
    let sequence_valid = !is_fraction_of(n, k, 1, 6) && !is_fraction_of(n, k, 5, 6);

    let order = (1u64 << n) - 1;
    let e_cubic = ((1u64 << ((3 * k) % n)) + 1) % order;
    let e_linear = ((1u64 << (k % n)) + 1) % order;
    let c_one = cyclotomic_coset(n, 1);
    let c_lin = cyclotomic_coset(n, e_linear);
    let c_cub = cyclotomic_coset(n, e_cubic);
    let c1_dimension = if c_lin.representative == c_cub.representative {
        c_lin.size
    } else {
        c_lin.size + c_cub.size
    };
    let c2_dimension = if c_one.representative == c_lin.representative
        || c_one.representative == c_cub.representative
    {
        c1_dimension
    } else {
        c1_dimension + c_one.size
    };
    let code_degenerate = c_lin.size < n || c_cub.size < n || c1_dimension != 2 * n || c2_dimension != 3 * n;

    Ok(ParamSet {
        n,
        k,
        d,
        q0: 1u64 << d,
        s,
        d_prime,
        m,
        mu,
        s_even,
        sequence_valid,
        code_degenerate,
        e_cubic,
        e_linear,
        c1_dimension,
        c2_dimension,
    })
}

impl ParamSet {
    pub fn header(&self) -> ParamsHeader {
        ParamsHeader {
            n: self.n,
            k: self.k,
            d: self.d,
            s: self.s,
            mu: self.mu,
        }
    }

    /// q = 2^n
    pub fn q(&self) -> u64 {
        1u64 << self.n
    }

    /// Sequence family size: 2^(2n) for s even, 2^(2n) + 2^n + 1 for s odd.
    pub fn family_size(&self) -> u64 {
        let q = self.q();
        if self.s_even {
            q * q
        } else {
            q * q + q + 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n8_k1() {
        let p = validate_params(8, 1).unwrap();
        assert_eq!((p.d, p.q0, p.s, p.d_prime), (1, 2, 8, 2));
        assert_eq!(p.m, Some(4));
        assert_eq!(p.mu, Some(1));
        assert!(p.s_even && p.sequence_valid && !p.code_degenerate);
        assert_eq!((p.e_cubic, p.e_linear), (9, 3));
        assert_eq!((p.c1_dimension, p.c2_dimension), (16, 24));
    }

    #[test]
    fn quarter_is_rejected() {
        let err = validate_params(8, 2).unwrap_err();
        assert!(err.to_string().contains("k = n/4"), "{err}");
        assert!(validate_params(8, 4).unwrap_err().to_string().contains("k = n/2"));
        assert!(validate_params(8, 6).unwrap_err().to_string().contains("k = 3n/4"));
        assert!(validate_params(8, 0).is_err());
        assert!(validate_params(8, 8).is_err());
    }

    #[test]
    fn n6_k1_is_code_degenerate() {
        let p = validate_params(6, 1).unwrap();
        assert!(p.code_degenerate);
        assert!(!p.sequence_valid);
        assert_eq!(p.e_cubic, 9);
        assert_eq!(cyclotomic_coset(6, 9).members, vec![9, 18, 36]);
        assert_eq!(p.mu, Some(-1));
    }

    #[test]
    fn odd_n_has_no_mu() {
        let p = validate_params(5, 1).unwrap();
        assert_eq!((p.m, p.mu), (None, None));
        assert!(!p.s_even);
        assert_eq!(p.family_size(), 1024 + 32 + 1);
    }

    #[test]
    fn d_prime_relation() {
        for n in 2..=24 {
            for k in 1..n {
                let Ok(p) = validate_params(n, k) else { continue };
                assert!(p.d_prime == p.d || p.d_prime == 2 * p.d);
                assert_eq!(p.d_prime == 2 * p.d, p.s_even, "n={n} k={k}");
                assert_eq!(p.mu.is_some(), p.s_even);
                assert_eq!(p.m.is_some(), n % 2 == 0);
            }
        }
    }
}
