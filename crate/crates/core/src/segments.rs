//! The extremal ideals `I(d,k)` (revlex segment) and `J(d,k)` (lex segment).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::ideal::{minimalize, MonomialIdeal};
use crate::monomial::{monomials_of_degree, Monomial, TermOrder};

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` when it fits in a `u64`.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    binomial(n, k).to_u64()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SegmentSpec {
    pub n: usize,
    pub d: u32,
    pub k: usize,
}

impl SegmentSpec {
    /// Validates `0 <= k <= C(n+d-1, d)`.
    pub fn new(n: usize, d: u32, k: usize) -> Result<Self> {
        let full = stratum_size(n, d);
        if BigUint::from(k) > full {
            return Err(Error::Argument(format!(
                "k = {k} exceeds C(n+d-1, d) = {full} for n = {n}, d = {d}"
            )));
        }
        Ok(SegmentSpec { n, d, k })
    }
}

/// Number of degree-`d` monomials in `n` variables.
pub fn stratum_size(n: usize, d: u32) -> BigUint {
    if n == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::default() };
    }
    binomial(n as u64 + d as u64 - 1, d as u64)
}

/// Every degree-`d` monomial, strictly descending under `order`.
pub fn enumerate_degree(n: usize, d: u32, order: TermOrder) -> Vec<Monomial> {
    let mut all = monomials_of_degree(n, d);
    all.sort_by(|a, b| order.compare(b, a));
    all
}

fn segment(spec: &SegmentSpec, order: TermOrder) -> Result<MonomialIdeal> {
    let SegmentSpec { n, d, k } = *spec;
    let stratum = enumerate_degree(n, d, order);
    if k > stratum.len() {
        return Err(Error::Argument(format!("k = {k} exceeds the {} monomials of degree {d}", stratum.len())));
    }
    minimalize(n, stratum.into_iter().take(k))
}

/// `I(d,k)`: generated by the `k` largest degree-`d` monomials under revlex.
pub fn rev_segment_ideal(spec: &SegmentSpec) -> Result<MonomialIdeal> {
    segment(spec, TermOrder::RevLex)
}

/// `J(d,k)`: generated by the `k` largest degree-`d` monomials under lex.
pub fn lex_segment_ideal(spec: &SegmentSpec) -> Result<MonomialIdeal> {
    segment(spec, TermOrder::Lex)
}
