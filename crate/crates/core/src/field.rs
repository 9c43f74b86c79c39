//! Arithmetic in GF(2^n) for 1 <= n <= 24.
//!
//! Elements are packed polynomial residues in a `u32`. Multiplication goes
//! through log/antilog tables built from the lexicographically smallest
//! primitive polynomial of degree n, so the tables (and every enumeration
//! order derived from them) are reproducible.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 24;

/// A field element as its coefficient vector over F2 (bit j = coefficient of x^j).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// A concrete GF(2^n) with its primitive element and lookup tables.
#[derive(Clone)]
pub struct FieldSpec {
    n: u32,
    modulus: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace_mask: u32,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("n", &self.n)
            .field("modulus", &format_args!("{:#b}", self.modulus))
            .finish()
    }
}

/// Carry-less product of `a` and `b` reduced modulo `modulus` (degree `n`).
pub(crate) fn poly_mulmod(mut a: u64, mut b: u64, modulus: u64, n: u32) -> u64 {
    let top = 1u64 << n;
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn poly_powmod(base: u64, mut e: u64, modulus: u64, n: u32) -> u64 {
    let mut result = 1u64;
    let mut b = base;
    while e != 0 {
        if e & 1 != 0 {
            result = poly_mulmod(result, b, modulus, n);
        }
        b = poly_mulmod(b, b, modulus, n);
        e >>= 1;
    }
    result
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// True when x has multiplicative order exactly 2^n - 1 modulo `modulus`,
/// which forces `modulus` to be irreducible and primitive.
fn is_primitive(modulus: u64, n: u32) -> bool {
    let order = (1u64 << n) - 1;
    // for n = 1 the residue of x modulo x + c is c
    let x = if n == 1 { modulus & 1 } else { 0b10 };
    if poly_powmod(x, order, modulus, n) != 1 {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|p| poly_powmod(x, order / p, modulus, n) != 1)
}

/// Builds GF(2^n) over the lexicographically smallest primitive polynomial.
pub fn make_field(n: u32) -> Result<FieldSpec> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    let modulus = ((1u64 << n)..(1u64 << (n + 1)))
        .find(|&m| is_primitive(m, n))
        .expect("a primitive polynomial exists for every degree");
    Ok(FieldSpec::with_modulus(n, modulus))
}

impl FieldSpec {
    fn with_modulus(n: u32, modulus: u64) -> FieldSpec {
        let order = (1usize << n) - 1;
        let mut exp = vec![0u32; order];
        let mut log = vec![u32::MAX; 1usize << n];
        let pi = if n == 1 { 1 } else { 0b10 };
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur as u32;
            log[cur as usize] = i as u32;
            cur = poly_mulmod(cur, pi, modulus, n);
        }
        let mut field = FieldSpec {
            n,
            modulus,
            exp,
            log,
            trace_mask: 0,
        };
        let mut mask = 0u32;
        for j in 0..n {
            let t = field.trace_slow(FieldElement(1 << j));
            debug_assert!(t.0 <= 1);
            mask |= t.0 << j;
        }
        field.trace_mask = mask;
        field
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Field size q = 2^n.
    #[inline]
    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    /// Order of the multiplicative group, 2^n - 1.
    #[inline]
    pub fn order(&self) -> u64 {
        self.exp.len() as u64
    }

    /// Coefficient mask of the modulus, including the x^n bit.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pi(&self) -> FieldElement {
        FieldElement(self.exp[1 % self.exp.len()])
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// pi^i, with i reduced modulo 2^n - 1.
    #[inline]
    pub fn exp(&self, i: u64) -> FieldElement {
        FieldElement(self.exp[(i % self.order()) as usize])
    }

    /// Discrete log of a nonzero element; `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        match self.log[a.0 as usize] {
            u32::MAX => None,
            l => Some(l),
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as u64) < self.size()
    }

    pub fn element(&self, bits: u32) -> FieldElement {
        debug_assert!((bits as u64) < self.size());
        FieldElement(bits)
    }

    /// All elements in increasing bit-mask order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.size() as u32).map(FieldElement)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        self.exp(s)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.pow(a, -1)
    }

    /// a^e for any integer e; the exponent is reduced modulo 2^n - 1 for a != 0.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::ZeroInverse(e)),
                std::cmp::Ordering::Equal => Ok(FieldElement::ONE),
                std::cmp::Ordering::Greater => Ok(FieldElement::ZERO),
            };
        }
        let l = self.log[a.0 as usize] as i128;
        let idx = (l * e as i128).rem_euclid(self.order() as i128);
        Ok(FieldElement(self.exp[idx as usize]))
    }

    /// a^(2^j); j is taken modulo n and may be negative.
    #[inline]
    pub fn frob(&self, a: FieldElement, j: i64) -> FieldElement {
        if a.0 == 0 {
            return a;
        }
        let j = j.rem_euclid(self.n as i64) as u32;
        let l = self.log[a.0 as usize] as u64;
        self.exp(l << j)
    }

    fn trace_slow(&self, a: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.n {
            acc += x;
            x = self.mul(x, x);
        }
        acc
    }

    /// Relative trace Tr^n_d(a) = sum_{i < n/d} a^(2^(d i)), an element of GF(2^d).
    pub fn trace(&self, a: FieldElement, d: u32) -> Result<FieldElement> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::TraceDegree { n: self.n, d });
        }
        if d == 1 {
            return Ok(FieldElement(self.trace1(a)));
        }
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.n / d {
            acc += x;
            x = self.frob(x, d as i64);
        }
        Ok(acc)
    }

    /// Absolute trace Tr^n_1(a) as 0 or 1.
    #[inline]
    pub fn trace1(&self, a: FieldElement) -> u32 {
        (a.0 & self.trace_mask).count_ones() & 1
    }

    /// Mask t with Tr^n_1(a) = parity(a & t).
    #[inline]
    pub fn trace_mask(&self) -> u32 {
        self.trace_mask
    }

    /// True when a lies in the subfield GF(2^d) (d must divide n).
    pub fn in_subfield(&self, a: FieldElement, d: u32) -> bool {
        self.frob(a, d as i64) == a
    }
}
