//! Closed-form Betti numbers of stable ideals.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::segments::binomial;

/// Betti table of a stable ideal `I`:
/// `β_{i,i+j}(I) = Σ_{x^a ∈ G(I), |a| = j} C(m(x^a) - 1, i)`.
///
/// Valid over every field. Errors with the first violating generator when
/// `I` is not stable.
pub fn ek_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    ideal.require_stable()?;
    let n = ideal.nvars();
    let mut table = BettiTable::new(n);
    if ideal.is_unit() {
        table.add(0, 0, 1);
        return Ok(table);
    }
    for i in 0..n {
        let mut by_degree: std::collections::BTreeMap<u64, BigUint> = Default::default();
        for g in ideal.generators() {
            let m = g.max_index().expect("non-unit generator") as u64;
            *by_degree.entry(g.degree()).or_default() += binomial(m, i as u64);
        }
        for (j, beta) in by_degree {
            let beta = beta
                .to_u64()
                .ok_or_else(|| Error::Overflow(format!("beta_{{{i},{}}} does not fit in 64 bits", i as u64 + j)))?;
            table.add(i, i + j as usize, beta);
        }
    }
    Ok(table)
}

/// Generator counts by `m(x^a)`: entry `m-1` counts generators with largest
/// variable `x_m`. For stable ideals in one degree this profile determines
/// the Betti table and vice versa.
pub fn max_index_profile(ideal: &MonomialIdeal) -> Vec<usize> {
    let mut profile = vec![0; ideal.nvars()];
    for g in ideal.generators() {
        if let Ok(m) = g.max_index() {
            profile[m] += 1;
        }
    }
    profile
}
