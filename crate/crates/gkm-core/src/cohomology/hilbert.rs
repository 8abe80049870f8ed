//! Hilbert series: ranks of the graded pieces, by direct computation, by
//! closed-form product expansion, and (for family A) by recurrence.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gkmgraph::{Family, LabeledGraph};
use crate::ring::Ring;
use crate::{Error, Limits, Result};

use super::graded_basis;

/// Coefficient list: entry `k` is the rank of the degree-`2k` piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub coeffs: Vec<BigInt>,
}

impl HilbertSeries {
    pub fn from_u64(v: &[u64]) -> HilbertSeries {
        HilbertSeries {
            coeffs: v.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Agreement on the overlap of the two coefficient lists.
    pub fn agrees_with(&self, other: &HilbertSeries) -> bool {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a == b)
    }
}

impl std::fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Ranks through degree `2K` by direct kernel computation.
pub fn hilbert_computed(
    graph: &Arc<LabeledGraph>,
    max_k: usize,
    ring: Ring,
    limits: &Limits,
) -> Result<HilbertSeries> {
    let mut coeffs = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        coeffs.push(BigInt::from(graded_basis(graph, k, ring, limits)?.rank()));
    }
    Ok(HilbertSeries { coeffs })
}

/// Series of `1/(1-u)^m`, truncated.
fn inv_one_minus_u_pow(m: usize, max_k: usize) -> Vec<BigInt> {
    // coefficient of u^k is C(k+m-1, m-1)
    let mut out = Vec::with_capacity(max_k + 1);
    let mut c = BigInt::one();
    for k in 0..=max_k {
        if k > 0 {
            c = c * BigInt::from(k + m - 1) / BigInt::from(k);
        }
        out.push(c.clone());
    }
    out
}

/// Multiply a truncated series by `(1 - u^d)`.
fn mul_one_minus_power(series: &mut [BigInt], d: usize) {
    for k in (0..series.len()).rev() {
        if k >= d {
            let sub = series[k - d].clone();
            series[k] -= sub;
        }
    }
}

/// The closed-form series of each family, expanded through `u^K` (where
/// `u = s²`): family A is `Π_{i=1}^n (1-u^i) / (1-u)^{2n}`; families B and
/// C (the latter with dyadic coefficients) are `Π (1-u^{2i}) / (1-u)^{2n}`;
/// the D families are `(1-u^n) Π_{i<n} (1-u^{2i}) / (1-u)^{2n}`.
pub fn hilbert_closed_form(family: Family, n: usize, max_k: usize) -> Result<HilbertSeries> {
    if n == 0 {
        return Err(Error::Usage("rank must be positive".into()));
    }
    let mut s = inv_one_minus_u_pow(2 * n, max_k);
    match family {
        Family::A => {
            for i in 1..=n {
                mul_one_minus_power(&mut s, i);
            }
        }
        Family::B | Family::C => {
            for i in 1..=n {
                mul_one_minus_power(&mut s, 2 * i);
            }
        }
        Family::D | Family::Dminus => {
            if n < 2 {
                return Err(Error::Usage("the D family needs rank at least 2".into()));
            }
            mul_one_minus_power(&mut s, n);
            for i in 1..n {
                mul_one_minus_power(&mut s, 2 * i);
            }
        }
    }
    Ok(HilbertSeries { coeffs: s })
}

/// Family-A ranks by recurrence, cross-checking the two equivalent forms:
/// the double sum `d_n(k) = Σ_{q=1}^{min(k+1,n)} Σ_{r=0}^{k+1-q} d_{n-1}(r)`
/// and its consolidated weighted form, from the base `d_1 ≡ 1`.
pub fn hilbert_recurrence_a(n: usize, max_k: usize) -> Result<HilbertSeries> {
    if n == 0 {
        return Err(Error::Usage("rank must be positive".into()));
    }
    // the later rows need earlier rows at shifted degrees, so compute a
    // margin wide enough for every lookup
    let width = max_k + n + 2;
    let mut prev: Vec<BigInt> = vec![BigInt::one(); width];
    for m in 2..=n {
        let mut cur = Vec::with_capacity(width);
        for k in 0..width {
            // double-sum form
            let mut double = BigInt::zero();
            for q in 1..=(k + 1).min(m) {
                for r in 0..=(k + 1 - q) {
                    if r < prev.len() {
                        double += &prev[r];
                    }
                }
            }
            // consolidated form
            let mut weighted = BigInt::zero();
            for i in 1..=m.min(k + 1) {
                weighted += BigInt::from(i) * &prev[k + 1 - i];
            }
            if k >= m {
                let mut tail = BigInt::zero();
                for i in m + 1..=k + 1 {
                    tail += &prev[k + 1 - i];
                }
                weighted += BigInt::from(m) * tail;
            }
            if double != weighted {
                return Err(Error::Internal(format!(
                    "recurrence forms disagree at n = {}, k = {}",
                    m, k
                )));
            }
            cur.push(double);
        }
        prev = cur;
    }
    prev.truncate(max_k + 1);
    Ok(HilbertSeries { coeffs: prev })
}
