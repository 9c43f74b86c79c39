//! The cyclic codes C1 (exponents 2^(3k)+1, 2^k+1) and C2 (adds exponent 1)
//! in trace form, their weight distributions, minimal polynomials and the
//! punctured code C1'.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::bits::{words_for, BitSeq};
use crate::context::Context;
use crate::distributions::{empirical_s_distribution, empirical_t_distribution, SStrategy, TStrategy, ValueDistribution};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::params::ParamsHeader;

/// The 2-cyclotomic coset of an exponent modulo 2^n - 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRecord {
    /// Smallest member.
    pub representative: u64,
    pub members: Vec<u64>,
    pub size: u32,
}

pub fn cyclotomic_coset(n: u32, e: u64) -> CosetRecord {
    let order = (1u64 << n) - 1;
    let e = if order == 0 { 0 } else { e % order };
    let mut members = vec![e];
    let mut x = (2 * e) % order.max(1);
    while x != e {
        members.push(x);
        x = (2 * x) % order;
    }
    members.sort_unstable();
    CosetRecord {
        representative: members[0],
        size: members.len() as u32,
        members,
    }
}

/// A polynomial over F2 as a coefficient mask (bit i = coefficient of x^i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf2Poly(pub u128);

impl Gf2Poly {
    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros())
    }

    /// Product; panics if the degree would exceed 127.
    pub fn mul(self, other: Gf2Poly) -> Gf2Poly {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            assert!(a + b < 128, "polynomial product too large");
        }
        let mut acc = 0u128;
        let mut b = other.0;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= self.0 << shift;
            }
            b >>= 1;
            shift += 1;
        }
        Gf2Poly(acc)
    }

    /// Value at a field element.
    pub fn eval(self, field: &FieldSpec, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for i in (0..128).rev() {
            acc = field.mul(acc, x);
            if (self.0 >> i) & 1 == 1 {
                acc += FieldElement::ONE;
            }
        }
        acc
    }
}

/// Minimal polynomial of pi^(-e) over F2, as the product of
/// (x - pi^(-e 2^j)) over the coset of e.
pub fn minimal_poly(field: &FieldSpec, e: u64) -> Gf2Poly {
    let coset = cyclotomic_coset(field.n(), e);
    let order = field.order();
    // coefficients in GF(2^n), lowest degree first
    let mut coeffs = vec![FieldElement::ONE];
    for &m in &coset.members {
        let root = field.exp((order - m % order) % order);
        let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] += field.mul(c, root);
        }
        coeffs = next;
    }
    let mut mask = 0u128;
    for (i, c) in coeffs.iter().enumerate() {
        assert!(c.0 <= 1, "minimal polynomial coefficient {c} outside F2");
        mask |= (c.0 as u128) << i;
    }
    Gf2Poly(mask)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Code {
    C1,
    C2,
}

impl Code {
    fn coefficient_count(self) -> usize {
        match self {
            Code::C1 => 2,
            Code::C2 => 3,
        }
    }
}

/// Exponents defining the code, in the order of the coefficients.
pub fn code_exponents(ctx: &Context, code: Code) -> Vec<u64> {
    let p = &ctx.params;
    let mut e = vec![p.e_cubic, p.e_linear];
    if code == Code::C2 {
        e.push(1);
    }
    e
}

/// Parity-check polynomial: the product of the distinct minimal polynomials.
pub fn check_polynomial(ctx: &Context, code: Code) -> Gf2Poly {
    let mut reps = Vec::new();
    let mut h = Gf2Poly(1);
    for e in code_exponents(ctx, code) {
        let r = cyclotomic_coset(ctx.n(), e).representative;
        if !reps.contains(&r) {
            reps.push(r);
            h = h.mul(minimal_poly(&ctx.field, e));
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codeword {
    pub bits: BitSeq,
    pub coeffs: Vec<FieldElement>,
}

impl Codeword {
    pub fn weight(&self) -> u32 {
        self.bits.weight()
    }
}

/// Bit i = Tr(alpha pi^(i e_cubic) + beta pi^(i e_linear) [+ gamma pi^i]).
pub fn codeword(ctx: &Context, alpha: FieldElement, beta: FieldElement, gamma: Option<FieldElement>) -> Codeword {
    let mut coeffs = vec![alpha, beta];
    coeffs.extend(gamma);
    let code = if gamma.is_some() { Code::C2 } else { Code::C1 };
    let bits = trace_word(&ctx.field, &coeffs, &code_exponents(ctx, code));
    Codeword { bits, coeffs }
}

/// The length-(2^n - 1) word i -> Tr(sum_j c_j pi^(i e_j)), via index arithmetic.
pub(crate) fn trace_word(field: &FieldSpec, coeffs: &[FieldElement], exponents: &[u64]) -> BitSeq {
    let order = field.order();
    let exp = field.exp_table();
    let terms: Vec<(u64, u64)> = coeffs
        .iter()
        .zip(exponents)
        .filter_map(|(&c, &e)| field.log(c).map(|l| (l as u64, e % order)))
        .collect();
    let mut idx: Vec<u64> = terms.iter().map(|t| t.0).collect();
    let mut out = BitSeq::zeros(order as usize);
    for i in 0..order as usize {
        let mut v = 0u32;
        for (slot, &(_, step)) in terms.iter().enumerate() {
            v ^= exp[idx[slot] as usize];
            idx[slot] += step;
            if idx[slot] >= order {
                idx[slot] -= order;
            }
        }
        if field.trace1(FieldElement(v)) == 1 {
            out.set(i, true);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightStrategy {
    ViaSums,
    Direct,
}

/// Hamming weight -> number of codewords (or of coefficient tuples, see `per_tuple`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub params: ParamsHeader,
    pub code: Code,
    pub strategy: WeightStrategy,
    pub length: u64,
    /// log2 of the number of distinct codewords.
    pub dimension: u32,
    pub entries: BTreeMap<u64, u128>,
    /// True when the counts are over coefficient tuples that do not map
    /// injectively to codewords.
    pub flagged: bool,
}

impl WeightDistribution {
    pub fn total(&self) -> u128 {
        self.entries.values().sum()
    }

    pub fn count(&self, weight: u64) -> u128 {
        self.entries.get(&weight).copied().unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in &self.entries {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }
}

#[derive(Serialize)]
struct WeightEntry {
    weight: u64,
    count: u128,
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<WeightEntry> = self
            .entries
            .iter()
            .map(|(&weight, &count)| WeightEntry { weight, count })
            .collect();
        let mut st = serializer.serialize_struct("WeightDistribution", 8)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("code", &self.code)?;
        st.serialize_field("strategy", &self.strategy)?;
        st.serialize_field("length", &self.length)?;
        st.serialize_field("dimension", &self.dimension)?;
        st.serialize_field("flagged", &self.flagged)?;
        st.serialize_field("entries", &entries)?;
        st.serialize_field("total", &self.total())?;
        st.end()
    }
}

/// Maps sum values v to weights 2^(n-1) - v/2, keeping counts.
pub fn weights_from_values(ctx: &Context, code: Code, values: &ValueDistribution) -> WeightDistribution {
    let half = 1i64 << (ctx.n() - 1);
    let entries = values
        .entries
        .iter()
        .map(|(&v, &c)| {
            debug_assert!(v % 2 == 0);
            ((half - v / 2) as u64, c)
        })
        .collect();
    let p = &ctx.params;
    WeightDistribution {
        params: p.header(),
        code,
        strategy: WeightStrategy::ViaSums,
        length: ctx.field.order(),
        dimension: (code.coefficient_count() as u32) * ctx.n(),
        entries,
        flagged: p.code_degenerate,
    }
}

/// Reduced row echelon basis of the span of `rows`.
fn span_basis(rows: Vec<BitSeq>) -> Vec<BitSeq> {
    let mut basis: Vec<(usize, BitSeq)> = Vec::new();
    for mut r in rows {
        for (pivot, b) in &basis {
            if r.get(*pivot) {
                r.xor_assign(b);
            }
        }
        if let Some(p) = (0..r.len()).find(|&i| r.get(i)) {
            for (_, b) in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&r);
                }
            }
            basis.push((p, r));
        }
    }
    basis.into_iter().map(|(_, b)| b).collect()
}

/// Weight histogram of the span of `basis`, by Gray-code enumeration.
fn span_weights(basis: &[BitSeq], length: usize) -> BTreeMap<u64, u128> {
    let r = basis.len();
    let words = words_for(length);
    let hi = r.min(8);
    let lo = r - hi;
    let hist = (0u64..1 << hi)
        .into_par_iter()
        .fold(
            || vec![0u64; length + 1],
            |mut h, prefix| {
                let mut cur = vec![0u64; words];
                for (j, b) in basis[lo..].iter().enumerate() {
                    if (prefix >> j) & 1 == 1 {
                        for (c, w) in cur.iter_mut().zip(b.words()) {
                            *c ^= w;
                        }
                    }
                }
                h[cur.iter().map(|w| w.count_ones()).sum::<u32>() as usize] += 1;
                for step in 1u64..1 << lo {
                    let j = step.trailing_zeros() as usize;
                    for (c, w) in cur.iter_mut().zip(basis[j].words()) {
                        *c ^= w;
                    }
                    h[cur.iter().map(|w| w.count_ones()).sum::<u32>() as usize] += 1;
                }
                h
            },
        )
        .reduce(
            || vec![0u64; length + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    hist.into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(w, c)| (w as u64, c as u128))
        .collect()
}

/// Generators: the codewords of the unit coefficient vectors.
fn generators(ctx: &Context, code: Code) -> Vec<BitSeq> {
    let n = ctx.n();
    let mut out = Vec::new();
    for slot in 0..code.coefficient_count() {
        for j in 0..n {
            let mut c = vec![FieldElement::ZERO; 3];
            c[slot] = FieldElement(1 << j);
            let gamma = (code == Code::C2).then_some(c[2]);
            out.push(codeword(ctx, c[0], c[1], gamma).bits);
        }
    }
    out
}

pub fn weight_distribution(ctx: &Context, code: Code, strategy: WeightStrategy) -> Result<WeightDistribution> {
    match strategy {
        WeightStrategy::ViaSums => {
            let values = match code {
                Code::C1 => {
                    let fast = if ctx.params.s_even || ctx.n() <= 12 {
                        TStrategy::RankFast
                    } else {
                        TStrategy::Naive
                    };
                    empirical_t_distribution(ctx, fast)?
                }
                Code::C2 => empirical_s_distribution(ctx, SStrategy::Lemma2)?,
            };
            Ok(weights_from_values(ctx, code, &values))
        }
        WeightStrategy::Direct => {
            match code {
                Code::C1 => ctx.guard("direct C1 enumeration", 10)?,
                Code::C2 => ctx.guard("direct C2 enumeration", 8)?,
            }
            let length = ctx.field.order() as usize;
            let basis = span_basis(generators(ctx, code));
            Ok(WeightDistribution {
                params: ctx.params.header(),
                code,
                strategy,
                length: length as u64,
                dimension: basis.len() as u32,
                entries: span_weights(&basis, length),
                flagged: false,
            })
        }
    }
}

/// Length (2^n - 1)/(2^d + 1) of the punctured code C1'.
pub fn punctured_length(ctx: &Context) -> Result<u64> {
    let p = &ctx.params;
    if !p.s_even {
        return Err(Error::Unsupported("n/d even for the punctured code".into()));
    }
    Ok(ctx.field.order() / (p.q0 + 1))
}

/// Weights of C1' from a C1 distribution by A'_i = A_((2^d+1) i).
pub fn punctured_c1_weights(ctx: &Context, full: &WeightDistribution) -> Result<WeightDistribution> {
    let length = punctured_length(ctx)?;
    let factor = ctx.params.q0 + 1;
    let mut entries = BTreeMap::new();
    for (&w, &c) in &full.entries {
        if w % factor != 0 {
            return Err(Error::Unsupported(format!(
                "C1 weights divisible by {factor}; found weight {w}"
            )));
        }
        entries.insert(w / factor, c);
    }
    Ok(WeightDistribution {
        length,
        entries,
        ..full.clone()
    })
}

/// Weights of C1' by truncating every enumerated C1 codeword to its first l' symbols.
pub fn punctured_c1_direct(ctx: &Context) -> Result<WeightDistribution> {
    ctx.guard("direct C1' enumeration", 10)?;
    let length = punctured_length(ctx)? as usize;
    let basis: Vec<BitSeq> = span_basis(generators(ctx, Code::C1))
        .iter()
        .map(|b| b.truncate(length))
        .collect();
    Ok(WeightDistribution {
        params: ctx.params.header(),
        code: Code::C1,
        strategy: WeightStrategy::Direct,
        length: length as u64,
        dimension: basis.len() as u32,
        entries: span_weights(&basis, length),
        flagged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{theorem1_table, theorem2_table};
    use crate::exp_sums::{s_naive, t_naive};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn cosets() {
        assert_eq!(cyclotomic_coset(8, 1).size, 8);
        let c = cyclotomic_coset(6, 9);
        assert_eq!((c.members.clone(), c.size, c.representative), (vec![9, 18, 36], 3, 9));
        assert_eq!(cyclotomic_coset(5, 0).members, vec![0]);
        let c = cyclotomic_coset(8, 9);
        for &m in &c.members {
            assert!(c.members.contains(&((2 * m) % 255)));
        }
        for n in 2..=12 {
            for e in 0..(1u64 << n) - 1 {
                assert_eq!(n % cyclotomic_coset(n, e).size, 0);
            }
        }
    }

    #[test]
    fn minimal_polynomials() {
        let ctx = Context::new(8, 1).unwrap();
        let f = &ctx.field;
        let h1 = minimal_poly(f, 1);
        assert_eq!(h1.degree(), Some(8));
        assert_eq!(h1.eval(f, f.inv(f.pi()).unwrap()), FieldElement::ZERO);
        // the minimal polynomial of pi^-1 is the reciprocal of the modulus
        let m = f.modulus() as u128;
        let recip = (0..=8).fold(0u128, |acc, i| acc | (((m >> i) & 1) << (8 - i)));
        assert_eq!(h1.0, recip);
        assert_eq!(check_polynomial(&ctx, Code::C1).degree(), Some(16));
        assert_eq!(check_polynomial(&ctx, Code::C2).degree(), Some(24));
        let degenerate = Context::new(6, 1).unwrap();
        assert_eq!(minimal_poly(&degenerate.field, 9).degree(), Some(3));
    }

    #[test]
    fn codewords_satisfy_check_polynomial() {
        let ctx = Context::new(5, 1).unwrap();
        let l = 31usize;
        let h = check_polynomial(&ctx, Code::C2);
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let mut c = || FieldElement(rng.gen_range(0..32));
            let w = codeword(&ctx, c(), c(), Some(c()));
            for t in 0..l {
                let mut acc = false;
                for j in 0..=h.degree().unwrap() as usize {
                    if (h.0 >> j) & 1 == 1 {
                        acc ^= w.bits.get((t + l - j % l) % l);
                    }
                }
                assert!(!acc);
            }
        }
    }

    #[test]
    fn codeword_weights_follow_sums() {
        let ctx = Context::new(8, 1).unwrap();
        let zero = codeword(&ctx, FieldElement::ZERO, FieldElement::ZERO, None);
        assert_eq!(zero.weight(), 0);
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..100 {
            let a = FieldElement(rng.gen_range(0..256));
            let b = FieldElement(rng.gen_range(0..256));
            let t = t_naive(&ctx, a, b).value;
            let w = codeword(&ctx, a, b, None).weight() as i64;
            assert_eq!(w, 128 - t / 2);
            if t == 16 {
                assert_eq!(w, 120);
            }
            let g = FieldElement(rng.gen_range(0..256));
            let s = s_naive(&ctx, a, b, g).value;
            assert_eq!(codeword(&ctx, a, b, Some(g)).weight() as i64, 128 - s / 2);
        }
    }

    #[test]
    fn cyclic_shift_closure() {
        let ctx = Context::new(7, 1).unwrap();
        let f = &ctx.field;
        let p = &ctx.params;
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..30 {
            let mut c = || FieldElement(rng.gen_range(0..128));
            let (a, b, g) = (c(), c(), c());
            let w = codeword(&ctx, a, b, Some(g));
            let shifted = codeword(
                &ctx,
                f.mul(a, f.exp(p.e_cubic)),
                f.mul(b, f.exp(p.e_linear)),
                Some(f.mul(g, f.pi())),
            );
            assert_eq!(w.bits.rotate(1), shifted.bits);
        }
    }

    #[test]
    fn c2_at_n5() {
        let ctx = Context::new(5, 1).unwrap();
        let direct = weight_distribution(&ctx, Code::C2, WeightStrategy::Direct).unwrap();
        assert_eq!(direct.dimension, 15);
        let expect: BTreeMap<u64, u128> =
            [(12, 8680), (20, 5208), (8, 465), (24, 155), (16, 18259), (0, 1)].into_iter().collect();
        assert_eq!(direct.entries, expect);
        let via = weight_distribution(&ctx, Code::C2, WeightStrategy::ViaSums).unwrap();
        assert_eq!(via.entries, expect);
        let table = theorem2_table(&ctx.params).to_distribution(&ctx.params).unwrap();
        assert_eq!(weights_from_values(&ctx, Code::C2, &table).entries, expect);
    }

    #[test]
    fn c1_at_n8_and_punctured() {
        let ctx = Context::new(8, 1).unwrap();
        let direct = weight_distribution(&ctx, Code::C1, WeightStrategy::Direct).unwrap();
        let via = weight_distribution(&ctx, Code::C1, WeightStrategy::ViaSums).unwrap();
        assert_eq!(direct.entries, via.entries);
        assert_eq!(direct.count(0), 1);
        let table = theorem1_table(&ctx.params).to_distribution(&ctx.params).unwrap();
        assert_eq!(weights_from_values(&ctx, Code::C1, &table).entries, direct.entries);
        assert!(direct.entries.keys().all(|w| w % 3 == 0));

        assert_eq!(punctured_length(&ctx).unwrap(), 85);
        let re = punctured_c1_weights(&ctx, &direct).unwrap();
        assert_eq!(re.length, 85);
        assert_eq!(re.count(0), 1);
        assert_eq!(re.entries, punctured_c1_direct(&ctx).unwrap().entries);
        for (&w, &c) in &direct.entries {
            assert_eq!(re.count(w / 3), c);
        }
        assert!(punctured_length(&Context::new(5, 1).unwrap()).is_err());
    }

    #[test]
    fn degenerate_code_has_smaller_dimension() {
        let ctx = Context::new(6, 1).unwrap();
        let direct = weight_distribution(&ctx, Code::C1, WeightStrategy::Direct).unwrap();
        assert_eq!(direct.dimension, ctx.params.c1_dimension);
        assert!(direct.dimension < 12);
        assert_eq!(direct.total(), 1u128 << direct.dimension);
        let via = weight_distribution(&ctx, Code::C1, WeightStrategy::ViaSums).unwrap();
        assert!(via.flagged);
        assert_eq!(via.total(), 1 << 12);
    }

    #[test]
    fn csv_and_json() {
        let ctx = Context::new(5, 1).unwrap();
        let w = weight_distribution(&ctx, Code::C1, WeightStrategy::Direct).unwrap();
        assert!(w.to_csv().starts_with("weight,count\n0,1\n"));
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["entries"][0]["weight"], 0);
        assert_eq!(v["total"], 1024);
    }
}
