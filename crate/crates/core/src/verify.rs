//! Checkers for the lower bounds on linear strands and for the segment
//! sandwich of ideals with linear resolution. Every check returns a
//! structured report that serializes to JSON and renders as text; failing
//! reports carry the full table they were computed from.

use std::fmt::{self, Write as _};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::betti::{linear_strand, off_diagonal, table_leq, BettiTable};
use crate::ek::ek_betti;
use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::ideal::MonomialIdeal;
use crate::koszul::{multigraded_betti, BettiOptions};
use crate::monomial::{cmp_rlex, Monomial};
use crate::segments::{binomial, enumerate_degree, lex_segment_ideal, rev_segment_ideal, SegmentSpec};
use crate::TermOrder;

/// One inequality `beta >= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub k: usize,
    pub i: usize,
    pub beta: u64,
    pub bound: BigUint,
    pub margin: BigInt,
    pub pass: bool,
}

impl BoundCheck {
    fn new(k: usize, i: usize, beta: u64, bound: BigUint) -> Self {
        let margin = BigInt::from(beta) - BigInt::from(bound.clone());
        let pass = margin >= BigInt::from(0);
        BoundCheck { k, i, beta, bound, margin, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandReport {
    pub k: usize,
    pub d_k: i64,
    pub p: Option<usize>,
    pub vacuous: bool,
    /// `β_i^{k,lin} >= C(p, i)` for `k <= i <= p`.
    pub binomial: Vec<BoundCheck>,
    /// `β_{p-1}^{k,lin} >= p`, present when `k <= p - 1`.
    pub penultimate: Option<BoundCheck>,
}

impl StrandReport {
    pub fn pass(&self) -> bool {
        self.binomial.iter().chain(&self.penultimate).all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HerzogReport {
    pub pass: bool,
    pub strands: Vec<StrandReport>,
    pub failures: Vec<BoundCheck>,
    pub table: BettiTable,
}

fn strand_report(t: &BettiTable, k: usize) -> Result<StrandReport> {
    let s = linear_strand(t, k)?;
    let mut report = StrandReport { k, d_k: s.d_k, p: s.p, vacuous: s.is_vacuous(), binomial: vec![], penultimate: None };
    if report.vacuous {
        return Ok(report);
    }
    let p = s.p.expect("non-vacuous");
    report.binomial = (k..=p).map(|i| BoundCheck::new(k, i, s.value(i), binomial(p as u64, i as u64))).collect();
    if p >= 1 && p - 1 >= k {
        report.penultimate = Some(BoundCheck::new(k, p - 1, s.value(p - 1), BigUint::from(p)));
    }
    Ok(report)
}

/// Check `β_i^{k,lin} >= C(p, i)` on every strand with a nonempty row `k`,
/// plus `β_{p-1}^{k,lin} >= p`.
pub fn check_herzog_bounds(t: &BettiTable) -> Result<HerzogReport> {
    if t.is_zero() {
        return Ok(HerzogReport { pass: true, strands: vec![], failures: vec![], table: t.clone() });
    }
    let strands = (0..=t.nvars()).map(|k| strand_report(t, k)).collect::<Result<Vec<_>>>()?;
    let failures: Vec<BoundCheck> = strands
        .iter()
        .flat_map(|s| s.binomial.iter().chain(&s.penultimate))
        .filter(|c| !c.pass)
        .cloned()
        .collect();
    Ok(HerzogReport { pass: failures.is_empty(), strands, failures, table: t.clone() })
}

/// The bound for the `k`-th syzygy module `M` of the module with table `t`:
/// `β_i^{lin}(M) >= C(p_M + k, i + k)` and `β_{p_M - 1}^{lin}(M) >= p_M + k`,
/// read off through `β_i^{lin}(M) = β_{i+k}^{k,lin}`. Indices in the report
/// are those of `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyzygyReport {
    pub k: usize,
    pub p: Option<usize>,
    pub vacuous: bool,
    pub checks: Vec<BoundCheck>,
    pub pass: bool,
    pub table: BettiTable,
}

pub fn check_syzygy_bounds(t: &BettiTable, k: usize) -> Result<SyzygyReport> {
    let empty = |vacuous| SyzygyReport { k, p: None, vacuous, checks: vec![], pass: true, table: t.clone() };
    if t.is_zero() || k > t.nvars() {
        return Ok(empty(true));
    }
    let s = linear_strand(t, k)?;
    if s.is_vacuous() {
        return Ok(empty(true));
    }
    let p_m = s.p.expect("non-vacuous") - k;
    let mut checks: Vec<BoundCheck> = (0..=p_m)
        .map(|i| BoundCheck::new(k, i, s.value(i + k), binomial((p_m + k) as u64, (i + k) as u64)))
        .collect();
    if p_m >= 1 {
        checks.push(BoundCheck::new(k, p_m - 1, s.value(p_m - 1 + k), BigUint::from(p_m + k)));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SyzygyReport { k, p: Some(p_m), vacuous: false, checks, pass, table: t.clone() })
}

/// Betti table of `I`: closed form when `I` is stable, Koszul homology
/// over the default prime otherwise.
pub fn table_of(ideal: &MonomialIdeal) -> Result<BettiTable> {
    if ideal.is_stable() {
        ek_betti(ideal)
    } else {
        let field = PrimeField::new(DEFAULT_PRIME)?;
        let opts = BettiOptions { max_generators: usize::MAX, ..BettiOptions::default() };
        Ok(multigraded_betti(ideal, field, &opts)?.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    pub d: usize,
    pub k: usize,
    pub lower: BettiTable,
    pub table: BettiTable,
    pub upper: BettiTable,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub equals_lower: bool,
    pub equals_upper: bool,
    pub pass: bool,
}

/// `table(I(d,k)) <= table(I) <= table(J(d,k))` for an ideal with a
/// `d`-linear resolution and `k` generators.
pub fn check_sandwich(ideal: &MonomialIdeal) -> Result<SandwichReport> {
    let table = table_of(ideal)?;
    check_sandwich_with_table(ideal.nvars(), &table)
}

/// As [`check_sandwich`], with the table of `I` supplied by the caller.
pub fn check_sandwich_with_table(n: usize, table: &BettiTable) -> Result<SandwichReport> {
    let Some(((_, d), k)) = table.iter().find(|((i, _), _)| *i == 0) else {
        return Err(Error::UndefinedInput("sandwich needs a nonzero ideal".into()));
    };
    if let Some(((i, j), beta)) = off_diagonal(table, d) {
        return Err(Error::NotLinear { d, i, j, beta });
    }
    let spec = SegmentSpec::new(n, d as u32, k as usize)?;
    let lower = ek_betti(&rev_segment_ideal(&spec)?)?;
    let upper = ek_betti(&lex_segment_ideal(&spec)?)?;
    let lower_ok = table_leq(&lower, table)?;
    let upper_ok = table_leq(table, &upper)?;
    Ok(SandwichReport {
        d,
        k: k as usize,
        equals_lower: &lower == table,
        equals_upper: &upper == table,
        lower,
        table: table.clone(),
        upper,
        lower_ok,
        upper_ok,
        pass: lower_ok && upper_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkStep {
    pub removed: Monomial,
    pub added: Monomial,
    pub ideal: MonomialIdeal,
    pub table: BettiTable,
    pub stable: bool,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkReport {
    pub d: u32,
    pub k: usize,
    pub start: MonomialIdeal,
    pub start_table: BettiTable,
    pub steps: Vec<WalkStep>,
    pub reached_segment: bool,
    pub pass: bool,
}

/// Walk from a stable ideal generated in degree `d` to `I(d,k)` by swapping
/// the revlex-smallest generator outside the segment for the revlex-largest
/// segment monomial not yet in the ideal, recording every intermediate
/// table and whether it is entrywise below the previous one.
pub fn exchange_walk(ideal: &MonomialIdeal) -> Result<WalkReport> {
    ideal.require_stable()?;
    let n = ideal.nvars();
    let k = ideal.num_generators();
    let d = match ideal.generated_in_single_degree() {
        Some(d) => d as u32,
        None if ideal.is_zero() => 1,
        None => return Err(Error::Argument("walk needs an ideal generated in a single degree".into())),
    };
    let target = rev_segment_ideal(&SegmentSpec::new(n, d, k)?)?;
    let segment: Vec<Monomial> = enumerate_degree(n, d, TermOrder::RevLex).into_iter().take(k).collect();
    let start_table = ek_betti(ideal)?;
    let mut current = ideal.clone();
    let mut previous = start_table.clone();
    let mut steps = Vec::new();
    let mut pass = true;
    while current != target {
        let removed = current
            .generators()
            .iter()
            .filter(|g| !target.contains(g))
            .min_by(|a, b| cmp_rlex(a, b).expect("same degree"))
            .cloned()
            .expect("ideals differ");
        let added = segment.iter().find(|m| !current.contains(m)).cloned().expect("ideals differ");
        let next = MonomialIdeal::new(n, current.generators().iter().filter(|g| **g != removed).cloned().chain([added.clone()]))?;
        let stable = next.is_stable();
        let table = if stable { ek_betti(&next)? } else { table_of(&next)? };
        let monotone = table_leq(&table, &previous)?;
        pass &= stable && monotone;
        previous = table.clone();
        current = next;
        steps.push(WalkStep { removed, added, ideal: current.clone(), table, stable, monotone });
        if !stable {
            break;
        }
    }
    let reached_segment = current == target;
    Ok(WalkReport { d, k, start: ideal.clone(), start_table, steps, reached_segment, pass: pass && reached_segment })
}

/// A text rendering for reports.
pub trait Render {
    fn render(&self) -> String;
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_check(out: &mut String, c: &BoundCheck, label: &str) -> fmt::Result {
    writeln!(
        out,
        "  {label} k={} i={}: {} >= {} (margin {}) {}",
        c.k,
        c.i,
        c.beta,
        c.bound,
        c.margin,
        verdict(c.pass)
    )
}

impl Render for HerzogReport {
    fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.strands {
            if s.vacuous {
                let _ = writeln!(out, "strand k={}: vacuous", s.k);
                continue;
            }
            let _ = writeln!(out, "strand k={} (d_k={}, p={}):", s.k, s.d_k, s.p.unwrap_or(0));
            for c in &s.binomial {
                let _ = write_check(&mut out, c, "binomial");
            }
            if let Some(c) = &s.penultimate {
                let _ = write_check(&mut out, c, "penultimate");
            }
        }
        if !self.pass {
            out.push_str(&self.table.render());
        }
        let _ = writeln!(out, "{}", verdict(self.pass));
        out
    }
}

impl Render for SyzygyReport {
    fn render(&self) -> String {
        let mut out = String::new();
        if self.vacuous {
            let _ = writeln!(out, "syzygy module {}: vacuous", self.k);
        } else {
            let _ = writeln!(out, "syzygy module {} (p={}):", self.k, self.p.unwrap_or(0));
            for c in &self.checks {
                let _ = write_check(&mut out, c, "bound");
            }
        }
        if !self.pass {
            out.push_str(&self.table.render());
        }
        let _ = writeln!(out, "{}", verdict(self.pass));
        out
    }
}

impl Render for SandwichReport {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "d={} k={}", self.d, self.k);
        let _ = writeln!(out, "revlex segment:\n{}", self.lower.render());
        let _ = writeln!(out, "ideal:\n{}", self.table.render());
        let _ = writeln!(out, "lex segment:\n{}", self.upper.render());
        let _ = writeln!(
            out,
            "lower {} upper {}{}{}",
            verdict(self.lower_ok),
            verdict(self.upper_ok),
            if self.equals_lower { " (equals lower)" } else { "" },
            if self.equals_upper { " (equals upper)" } else { "" }
        );
        let _ = writeln!(out, "{}", verdict(self.pass));
        out
    }
}

impl Render for WalkReport {
    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "start {} (d={}, k={})", self.start, self.d, self.k);
        for (s, step) in self.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "step {}: {} -> {} stable={} monotone={}",
                s + 1,
                step.removed,
                step.added,
                step.stable,
                step.monotone
            );
            if !step.monotone || !step.stable {
                out.push_str(&step.table.render());
            }
        }
        let _ = writeln!(out, "{}", verdict(self.pass));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::has_linear_resolution;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    fn max3() -> BettiTable {
        ek_betti(&ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap()
    }

    #[test]
    fn herzog_examples() {
        let r = check_herzog_bounds(&max3()).unwrap();
        assert!(r.pass);
        let k0 = &r.strands[0];
        assert_eq!(k0.p, Some(2));
        let got: Vec<(u64, BigUint)> = k0.binomial.iter().map(|c| (c.beta, c.bound.clone())).collect();
        assert_eq!(got, vec![(3, 1u32.into()), (3, 2u32.into()), (1, 1u32.into())]);
        assert_eq!(k0.penultimate.as_ref().unwrap().bound, BigUint::from(2u32));

        let principal = ek_betti(&ideal(3, &[&[2, 0, 0]])).unwrap();
        let r = check_herzog_bounds(&principal).unwrap();
        assert!(r.pass);
        assert_eq!(r.strands[0].binomial.len(), 1);
        assert!(r.strands[1..].iter().all(|s| s.vacuous));

        let cone = ek_betti(&ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]])).unwrap();
        assert!(check_herzog_bounds(&cone).unwrap().pass);
    }

    #[test]
    fn herzog_reports_a_failure_with_table() {
        let t = BettiTable::from_entries(3, [((0, 2), 1), ((1, 3), 1), ((2, 4), 1)]);
        let r = check_herzog_bounds(&t).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failures.len(), 4);
        assert_eq!(r.failures[0].margin, BigInt::from(-1));
        assert!(r.render().contains("FAIL"));
        assert!(r.render().contains("total:"));
    }

    #[test]
    fn syzygy_examples() {
        let r = check_syzygy_bounds(&max3(), 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.p, Some(1));
        let vals: Vec<u64> = r.checks.iter().map(|c| c.beta).collect();
        assert_eq!(vals, vec![3, 1, 3]);

        let sq = ek_betti(&ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0]])).unwrap();
        let r = check_syzygy_bounds(&sq, 1).unwrap();
        assert!(r.pass);
        assert_eq!((r.checks[0].beta, r.checks[0].bound.clone()), (2, BigUint::from(1u32)));
        assert!(check_syzygy_bounds(&sq, 2).unwrap().vacuous);
    }

    #[test]
    fn sandwich_examples() {
        let spec = SegmentSpec::new(3, 2, 3).unwrap();
        let r = check_sandwich(&rev_segment_ideal(&spec).unwrap()).unwrap();
        assert!(r.pass && r.equals_lower);
        let r = check_sandwich(&lex_segment_ideal(&spec).unwrap()).unwrap();
        assert!(r.pass && r.equals_upper);
        let r = check_sandwich(&ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[1, 0, 1]])).unwrap();
        assert!(r.pass);
        assert_eq!((r.d, r.k), (2, 4));
    }

    #[test]
    fn sandwich_requires_linear_resolution() {
        let i = ideal(2, &[&[3, 0], &[0, 2]]);
        assert!(matches!(check_sandwich(&i), Err(Error::NotLinear { d: 2, i: 0, j: 3, beta: 1 })));
        assert!(check_sandwich(&MonomialIdeal::zero(2)).is_err());
    }

    #[test]
    fn walk_reaches_segment_monotonically() {
        for seed in 0..20 {
            let i = crate::ideal::random_stable_ideal(4, 3, 6, seed).unwrap();
            let w = exchange_walk(&i).unwrap();
            assert!(w.pass, "{}", w.render());
            assert_eq!(w.steps.last().map(|s| s.ideal.clone()).unwrap_or(i), rev_segment_ideal(&SegmentSpec::new(4, 3, 6).unwrap()).unwrap());
        }
    }

    #[test]
    fn walk_from_lex_segment() {
        let spec = SegmentSpec::new(3, 2, 3).unwrap();
        let w = exchange_walk(&lex_segment_ideal(&spec).unwrap()).unwrap();
        assert_eq!(w.steps.len(), 1);
        assert_eq!(w.steps[0].removed, Monomial::new(vec![1, 0, 1]));
        assert_eq!(w.steps[0].added, Monomial::new(vec![0, 2, 0]));
        assert!(w.pass);
    }

    #[test]
    fn single_degree_stable_ideals_are_linear() {
        for seed in 0..30 {
            let i = crate::ideal::random_stable_ideal(4, 2 + (seed % 2) as u32, 4, seed).unwrap();
            let d = i.generated_in_single_degree().unwrap() as usize;
            assert!(has_linear_resolution(&ek_betti(&i).unwrap(), d));
        }
    }
}
