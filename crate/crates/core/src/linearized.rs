//! Linearized polynomials as F2-linear maps of GF(2^n), and the rank of the
//! quadratic form Tr(alpha x^(2^(3k)+1) + beta x^(2^k+1)) read off the kernel
//! of its associated map
//!
//!   phi(x) = alpha^(2^(3k)) x^(2^(6k)) + beta^(2^(3k)) x^(2^(4k)) + beta^(2^(2k)) x^(2^(2k)) + alpha x.
//!
//! The polar form of the quadratic form is Tr(y^(2^(3k)) phi(x)), so its
//! radical is ker phi and the F_{q0}-rank is s - dim_{F2}(ker phi)/d.

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::field::{FieldElement, FieldSpec};

/// An F2-linear endomorphism of GF(2^n), stored column-wise: `columns[j]` is
/// the image of x^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap2 {
    n: u32,
    columns: Vec<u32>,
    /// Monomial terms c * x^(2^j) the map was built from, if any.
    pub provenance: Option<Vec<(FieldElement, u32)>>,
}

impl LinearMap2 {
    pub fn zero(n: u32) -> LinearMap2 {
        LinearMap2 {
            n,
            columns: vec![0; n as usize],
            provenance: None,
        }
    }

    pub fn identity(n: u32) -> LinearMap2 {
        LinearMap2 {
            n,
            columns: (0..n).map(|j| 1 << j).collect(),
            provenance: None,
        }
    }

    pub fn from_columns(n: u32, columns: Vec<u32>) -> LinearMap2 {
        assert_eq!(columns.len(), n as usize);
        LinearMap2 {
            n,
            columns,
            provenance: None,
        }
    }

    /// The map x -> sum c * x^(2^j) over the given terms.
    pub fn from_monomials(field: &FieldSpec, terms: Vec<(FieldElement, u32)>) -> LinearMap2 {
        let n = field.n();
        let columns = (0..n)
            .map(|j| {
                let basis = FieldElement(1 << j);
                terms
                    .iter()
                    .fold(FieldElement::ZERO, |acc, &(c, p)| {
                        acc + field.mul(c, field.frob(basis, p as i64))
                    })
                    .0
            })
            .collect();
        LinearMap2 {
            n,
            columns,
            provenance: Some(terms),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    #[inline]
    pub fn apply(&self, x: FieldElement) -> FieldElement {
        let mut acc = 0;
        let mut bits = x.0;
        while bits != 0 {
            let j = bits.trailing_zeros();
            acc ^= self.columns[j as usize];
            bits &= bits - 1;
        }
        FieldElement(acc)
    }

    /// Evaluates the monomial form directly with field arithmetic.
    pub fn apply_monomials(&self, field: &FieldSpec, x: FieldElement) -> Option<FieldElement> {
        let terms = self.provenance.as_ref()?;
        Some(terms.iter().fold(FieldElement::ZERO, |acc, &(c, p)| {
            acc + field.mul(c, field.frob(x, p as i64))
        }))
    }

    /// All roots, by evaluating the map on every element.
    pub fn kernel_by_scan(&self) -> Vec<FieldElement> {
        (0..1u32 << self.n)
            .map(FieldElement)
            .filter(|&x| self.apply(x).is_zero())
            .collect()
    }
}

/// Rank over F2 of a set of packed vectors, by elimination into an echelon basis
/// indexed by leading bit.
#[inline]
pub fn rank_f2(vectors: &[u32]) -> u32 {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &v in vectors {
        let mut v = v;
        while v != 0 {
            let top = 31 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

/// F2-dimension of the null space.
pub fn kernel_dim(map: &LinearMap2) -> u32 {
    if map.columns.iter().all(|&c| c == 0) {
        return map.n;
    }
    map.n - rank_f2(&map.columns)
}

pub fn phi_map(ctx: &Context, alpha: FieldElement, beta: FieldElement) -> LinearMap2 {
    let f = &ctx.field;
    let n = ctx.n();
    let k = ctx.params.k;
    let red = |e: u32| e % n;
    let terms = vec![
        (f.frob(alpha, (3 * k) as i64), red(6 * k)),
        (f.frob(beta, (3 * k) as i64), red(4 * k)),
        (f.frob(beta, (2 * k) as i64), red(2 * k)),
        (alpha, 0),
    ];
    LinearMap2::from_monomials(f, terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRecord {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub kernel_dim_f2: u32,
    /// s - kernel_dim_f2 / d; `None` for the degenerate pair (0, 0).
    pub rank: Option<u32>,
}

impl RankRecord {
    /// i with rank = s - i.
    pub fn deficiency(&self, d: u32) -> u32 {
        self.kernel_dim_f2 / d
    }
}

pub fn rank_of(ctx: &Context, alpha: FieldElement, beta: FieldElement) -> RankRecord {
    let kdim = kernel_dim(&phi_map(ctx, alpha, beta));
    record(ctx, alpha, beta, kdim)
}

fn record(ctx: &Context, alpha: FieldElement, beta: FieldElement, kdim: u32) -> RankRecord {
    let p = &ctx.params;
    debug_assert_eq!(kdim % p.d, 0, "kernel dimension {kdim} not a multiple of d = {}", p.d);
    let rank = if alpha.is_zero() && beta.is_zero() {
        None
    } else {
        Some(p.s - kdim / p.d)
    };
    RankRecord {
        alpha,
        beta,
        kernel_dim_f2: kdim,
        rank,
    }
}

/// Column images of phi for every alpha (with beta = 0) and every beta (with
/// alpha = 0). phi is F2-linear in (alpha, beta) jointly, so the matrix of
/// phi_{alpha,beta} is the XOR of one row from each table.
pub struct PhiTables {
    n: usize,
    alpha_cols: Vec<u32>,
    beta_cols: Vec<u32>,
}

impl PhiTables {
    pub fn new(ctx: &Context) -> PhiTables {
        let n = ctx.n() as usize;
        let q = ctx.q() as usize;
        let build = |make: &dyn Fn(FieldElement) -> LinearMap2| {
            let mut table = vec![0u32; q * n];
            for j in 0..n {
                let map = make(FieldElement(1 << j));
                table[(1 << j) * n..(1 << j) * n + n].copy_from_slice(map.columns());
            }
            for c in 1..q {
                let low = c & c.wrapping_neg();
                if low == c {
                    continue;
                }
                let rest = c ^ low;
                for i in 0..n {
                    table[c * n + i] = table[rest * n + i] ^ table[low * n + i];
                }
            }
            table
        };
        let alpha_cols = build(&|a| phi_map(ctx, a, FieldElement::ZERO));
        let beta_cols = build(&|b| phi_map(ctx, FieldElement::ZERO, b));
        PhiTables {
            n,
            alpha_cols,
            beta_cols,
        }
    }

    #[inline]
    pub fn kernel_dim(&self, alpha: u32, beta: u32) -> u32 {
        let n = self.n;
        let a = &self.alpha_cols[alpha as usize * n..alpha as usize * n + n];
        let b = &self.beta_cols[beta as usize * n..beta as usize * n + n];
        let mut cols = [0u32; 32];
        for i in 0..n {
            cols[i] = a[i] ^ b[i];
        }
        n as u32 - rank_f2(&cols[..n])
    }

    pub fn map(&self, alpha: FieldElement, beta: FieldElement) -> LinearMap2 {
        let n = self.n;
        let cols = (0..n)
            .map(|i| self.alpha_cols[alpha.0 as usize * n + i] ^ self.beta_cols[beta.0 as usize * n + i])
            .collect();
        LinearMap2::from_columns(n as u32, cols)
    }

    pub fn rank_of(&self, ctx: &Context, alpha: FieldElement, beta: FieldElement) -> RankRecord {
        record(ctx, alpha, beta, self.kernel_dim(alpha.0, beta.0))
    }
}
