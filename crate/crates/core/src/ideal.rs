//! Monomial ideals by their minimal generators, stability predicates, and
//! seeded random generators for sweep corpora.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};
use crate::monomial::{monomials_of_degree, Monomial, TermOrder};
use crate::segments::{binomial_u64, rev_segment_ideal, SegmentSpec};

/// A monomial ideal in `n` variables, held as its minimal generating set sorted by
/// degree, then descending lex. The zero ideal has no generators; the unit ideal
/// has the single generator `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, generators: Vec::new() }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, generators: vec![Monomial::one(n)] }
    }

    /// The ideal generated by `gens`, minimalized.
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        minimalize(n, gens)
    }

    /// Build from exponent rows, e.g. `&[&[2, 0], &[1, 1]]`.
    pub fn from_exponents(n: usize, rows: &[&[u32]]) -> Result<Self> {
        minimalize(n, rows.iter().map(|r| Monomial::new(r.to_vec())))
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    pub fn contains(&self, a: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(a))
    }

    /// Degree `d` if all generators share it.
    pub fn generated_in_single_degree(&self) -> Option<u64> {
        let d = self.generators.first()?.degree();
        self.generators.iter().all(|g| g.degree() == d).then_some(d)
    }

    /// First failure of the stability condition: a generator `x^a` and the
    /// exchanged monomial `x_i x^a / x_{m(x^a)}` that falls outside the ideal.
    pub fn stability_violation(&self) -> Option<(Monomial, Monomial)> {
        for g in &self.generators {
            let Ok(m) = g.max_index() else { continue };
            for i in 0..m {
                let moved = g.exchange(m, i).expect("x_m divides g");
                if !self.contains(&moved) {
                    return Some((g.clone(), moved));
                }
            }
        }
        None
    }

    pub fn is_stable(&self) -> bool {
        self.stability_violation().is_none()
    }

    pub fn is_strongly_stable(&self) -> bool {
        self.generators.iter().all(|g| {
            (0..self.n).filter(|&j| g.exponent(j) > 0).all(|j| {
                (0..j).all(|i| self.contains(&g.exchange(j, i).expect("x_j divides g")))
            })
        })
    }

    pub fn require_stable(&self) -> Result<()> {
        match self.stability_violation() {
            None => Ok(()),
            Some((generator, required)) => Err(Error::NotStable { generator, required }),
        }
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dims(self.n, other.n)?;
        minimalize(self.n, self.generators.iter().chain(&other.generators).cloned())
    }

    pub fn to_file(&self) -> IdealFile {
        IdealFile {
            n: self.n,
            generators: self.generators.iter().map(|g| g.exponents().iter().map(|&e| e as i64).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("ideal serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: IdealFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        file.into_ideal()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {} variables", self.n)
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

/// On-disk form: `{"n": 3, "generators": [[2,0,0],[1,1,0]]}`.
///
/// Exponents are read as signed integers so negative entries are reported
/// instead of being swallowed by the deserializer.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealFile {
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
}

impl IdealFile {
    pub fn into_ideal(self) -> Result<MonomialIdeal> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for (r, row) in self.generators.iter().enumerate() {
            if row.len() != self.n {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("generator {r} has {} exponents, expected n = {}", row.len(), self.n),
                });
            }
            let mut exps = Vec::with_capacity(row.len());
            for (c, &e) in row.iter().enumerate() {
                let e = u32::try_from(e).map_err(|_| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("generator {r}, exponent {c}: {e} is not a nonnegative 32-bit integer"),
                })?;
                exps.push(e);
            }
            gens.push(Monomial::new(exps));
        }
        minimalize(self.n, gens)
    }
}

/// Keep the divisibility-minimal elements of `gens`, by ascending degree and
/// descending lex order within a degree.
pub fn minimalize(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<MonomialIdeal> {
    let mut all: Vec<Monomial> = Vec::new();
    for g in gens {
        check_dims(n, g.nvars())?;
        all.push(g);
    }
    // ascending degree, so a divisor is always seen before its multiples
    all.sort_by(|a, b| TermOrder::Lex.compare(a, b));
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for g in all {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| TermOrder::Lex.compare(b, a)));
    Ok(MonomialIdeal { n, generators: kept })
}

pub fn contains(ideal: &MonomialIdeal, a: &Monomial) -> bool {
    ideal.contains(a)
}

pub fn is_stable(ideal: &MonomialIdeal) -> bool {
    ideal.is_stable()
}

pub fn is_strongly_stable(ideal: &MonomialIdeal) -> bool {
    ideal.is_strongly_stable()
}

/// Exchange attempts per generator in [`random_stable_ideal`].
pub const DEFAULT_WALK_FACTOR: usize = 8;

/// A seeded stable ideal with exactly `k` generators, all of degree `d`.
pub fn random_stable_ideal(n: usize, d: u32, k: usize, seed: u64) -> Result<MonomialIdeal> {
    random_stable_ideal_with_walk(n, d, k, seed, DEFAULT_WALK_FACTOR * k)
}

/// Start at the revlex segment ideal `I(d,k)` and apply `attempts` random
/// generator swaps, each accepted only if the degree-`d` set stays stable.
pub fn random_stable_ideal_with_walk(
    n: usize,
    d: u32,
    k: usize,
    seed: u64,
    attempts: usize,
) -> Result<MonomialIdeal> {
    let start = rev_segment_ideal(&SegmentSpec::new(n, d, k)?)?;
    if k == 0 || n == 0 {
        return Ok(start);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stratum = monomials_of_degree(n, d);
    let mut set: BTreeSet<Monomial> = start.generators().iter().cloned().collect();
    for _ in 0..attempts {
        if set.len() == stratum.len() {
            break;
        }
        let current: Vec<&Monomial> = set.iter().collect();
        let out = current[rng.gen_range(0..current.len())].clone();
        let outside: Vec<&Monomial> = stratum.iter().filter(|m| !set.contains(*m)).collect();
        let inn = (*outside.choose(&mut rng).expect("stratum not full")).clone();
        set.remove(&out);
        if removable(&set, &out) && addable(&set, &inn) {
            set.insert(inn);
        } else {
            set.insert(out);
        }
    }
    minimalize(n, set)
}

// `out` may leave only if no remaining element exchanges onto it
fn removable(rest: &BTreeSet<Monomial>, out: &Monomial) -> bool {
    rest.iter().all(|w| {
        let m = w.max_index().expect("degree-d monomial with d > 0");
        (0..m).all(|i| w.exchange(m, i).as_ref() != Some(out))
    })
}

fn addable(set: &BTreeSet<Monomial>, v: &Monomial) -> bool {
    let Ok(m) = v.max_index() else { return true };
    (0..m).all(|i| set.contains(&v.exchange(m, i).expect("x_m divides v")))
}

/// A seeded stable ideal with mixed generator degrees: the sum of stable
/// single-degree ideals, retried until it has at most `max_gens` generators.
pub fn random_stable_ideal_mixed(n: usize, max_degree: u32, max_gens: usize, seed: u64) -> Result<MonomialIdeal> {
    if max_degree == 0 || max_gens == 0 || n == 0 {
        return Err(Error::Argument("need n, max_degree and max_gens all positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let parts = rng.gen_range(1..=2usize);
        let mut ideal = MonomialIdeal::zero(n);
        for _ in 0..parts {
            let d = rng.gen_range(1..=max_degree);
            let full = binomial_u64(n as u64 + d as u64 - 1, d as u64).unwrap_or(u64::MAX);
            let k = rng.gen_range(1..=full.min(max_gens as u64)) as usize;
            let piece = random_stable_ideal(n, d, k, rng.gen())?;
            ideal = ideal.sum(&piece)?;
        }
        if ideal.num_generators() <= max_gens {
            debug_assert!(ideal.is_stable());
            return Ok(ideal);
        }
    }
    Err(Error::Argument(format!(
        "could not draw a stable ideal with at most {max_gens} generators"
    )))
}

/// A seeded monomial ideal with exactly `k` minimal generators of degree
/// between 1 and `max_degree`.
pub fn random_monomial_ideal(n: usize, max_degree: u32, k: usize, seed: u64) -> Result<MonomialIdeal> {
    random_monomial_ideal_in_degrees(n, 1, max_degree, k, seed)
}

pub fn random_monomial_ideal_in_degrees(
    n: usize,
    min_degree: u32,
    max_degree: u32,
    k: usize,
    seed: u64,
) -> Result<MonomialIdeal> {
    if n == 0 || min_degree == 0 || min_degree > max_degree {
        return Err(Error::Argument("need n > 0 and 1 <= min_degree <= max_degree".into()));
    }
    let room = binomial_u64((n + max_degree as usize - 1) as u64, max_degree as u64).unwrap_or(u64::MAX);
    if k as u64 > room {
        return Err(Error::Argument(format!(
            "{k} minimal generators do not fit in degrees up to {max_degree} over {n} variables"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ideal = MonomialIdeal::zero(n);
    let mut stalled = 0;
    for _ in 0..50_000 {
        if ideal.num_generators() == k {
            return Ok(ideal);
        }
        if stalled > 200 {
            ideal = MonomialIdeal::zero(n);
            stalled = 0;
        }
        let d = rng.gen_range(min_degree..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        let cand = Monomial::new(exps);
        if ideal.contains(&cand) || ideal.generators().iter().any(|g| cand.divides(g)) {
            stalled += 1;
            continue;
        }
        stalled = 0;
        ideal = minimalize(n, ideal.generators().iter().cloned().chain([cand]))?;
    }
    if ideal.num_generators() == k {
        Ok(ideal)
    } else {
        Err(Error::Argument(format!(
            "could not draw {k} minimal generators in degrees {min_degree}..={max_degree} over {n} variables"
        )))
    }
}

/// Compare ideals by their canonical generator lists; useful for sorting reports.
pub fn cmp_ideals(a: &MonomialIdeal, b: &MonomialIdeal) -> Ordering {
    a.n.cmp(&b.n).then_with(|| a.generators.cmp(&b.generators))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn minimalize_examples() {
        let i = minimalize(2, [m(&[1, 0]), m(&[2, 0])]).unwrap();
        assert_eq!(i.generators(), &[m(&[1, 0])]);
        let i = minimalize(3, [m(&[1, 1, 0]), m(&[0, 1, 1]), m(&[1, 1, 1])]).unwrap();
        assert_eq!(i.generators(), &[m(&[1, 1, 0]), m(&[0, 1, 1])]);
        let i = minimalize(3, []).unwrap();
        assert!(i.is_zero());
    }

    #[test]
    fn minimalize_rejects_mixed_lengths() {
        assert!(matches!(
            minimalize(2, [m(&[1, 0, 0])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_order() {
        let i = minimalize(3, [m(&[0, 0, 1]), m(&[0, 2, 0]), m(&[1, 1, 0]), m(&[2, 0, 0])]).unwrap();
        assert_eq!(i.generators(), &[m(&[0, 0, 1]), m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0])]);
    }

    #[test]
    fn membership() {
        let i = MonomialIdeal::from_exponents(2, &[&[2, 0]]).unwrap();
        assert!(i.contains(&m(&[2, 1])));
        assert!(!i.contains(&m(&[1, 5])));
        assert!(!MonomialIdeal::zero(2).contains(&m(&[3, 3])));
        assert!(MonomialIdeal::unit(2).contains(&m(&[0, 0])));
    }

    #[test]
    fn stability_examples() {
        assert!(MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1]]).unwrap().is_stable());
        let bad = MonomialIdeal::from_exponents(2, &[&[0, 2]]).unwrap();
        assert!(!bad.is_stable());
        assert_eq!(bad.stability_violation(), Some((m(&[0, 2]), m(&[1, 1]))));
        assert!(MonomialIdeal::from_exponents(3, &[&[1, 0, 0]]).unwrap().is_stable());
        assert!(MonomialIdeal::zero(3).is_stable());
        assert!(MonomialIdeal::unit(3).is_stable());
    }

    #[test]
    fn strong_stability_examples() {
        assert!(MonomialIdeal::from_exponents(2, &[&[2, 0], &[1, 1], &[0, 2]]).unwrap().is_strongly_stable());
        assert!(!MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 2]]).unwrap().is_strongly_stable());
        assert!(MonomialIdeal::from_exponents(2, &[&[1, 0]]).unwrap().is_strongly_stable());
        assert!(MonomialIdeal::zero(2).is_strongly_stable());
        assert!(MonomialIdeal::unit(2).is_strongly_stable());
    }

    #[test]
    fn stable_but_not_strongly_stable() {
        // x2*x3 needs x1*x3 under strong stability but only x1*x2, x2^2 under stability
        let i = MonomialIdeal::from_exponents(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 2, 0], &[0, 1, 1]]).unwrap();
        assert!(i.is_stable());
        assert!(!i.is_strongly_stable());
    }

    #[test]
    fn random_stable_examples() {
        let i = random_stable_ideal(2, 2, 2, 11).unwrap();
        assert!(i.is_stable());
        assert_eq!(i.num_generators(), 2);
        assert!(i.generators().iter().all(|g| g.degree() == 2));
        assert!(random_stable_ideal(3, 2, 0, 5).unwrap().is_zero());
        let full = random_stable_ideal(3, 2, 6, 5).unwrap();
        assert_eq!(full.generators().len(), 6);
        assert_eq!(full, minimalize(3, monomials_of_degree(3, 2)).unwrap());
        assert!(matches!(random_stable_ideal(3, 2, 7, 5), Err(Error::Argument(_))));
    }

    #[test]
    fn random_stable_is_deterministic_and_stable() {
        for seed in 0..40 {
            let a = random_stable_ideal(4, 3, 7, seed).unwrap();
            let b = random_stable_ideal(4, 3, 7, seed).unwrap();
            assert_eq!(a, b);
            assert!(a.is_stable(), "{a:?}");
            assert_eq!(a.num_generators(), 7);
        }
    }

    #[test]
    fn random_walk_leaves_the_segment() {
        let start = rev_segment_ideal(&SegmentSpec::new(4, 2, 5).unwrap()).unwrap();
        let moved = (0..20).filter(|&s| random_stable_ideal(4, 2, 5, s).unwrap() != start).count();
        assert!(moved > 0);
    }

    #[test]
    fn random_monomial_has_k_generators() {
        let i = random_monomial_ideal(4, 3, 5, 2).unwrap();
        assert_eq!(i.num_generators(), 5);
        assert!(i.generators().iter().all(|g| (1..=3).contains(&g.degree())));
        assert_eq!(i, random_monomial_ideal(4, 3, 5, 2).unwrap());
    }

    #[test]
    fn json_roundtrip_and_rejections() {
        let i = MonomialIdeal::from_exponents(3, &[&[2, 0, 0], &[1, 1, 0]]).unwrap();
        assert_eq!(i.to_json(), r#"{"n":3,"generators":[[2,0,0],[1,1,0]]}"#);
        assert_eq!(MonomialIdeal::from_json(&i.to_json()).unwrap(), i);
        assert!(matches!(
            MonomialIdeal::from_json(r#"{"n":2,"generators":[[1,-1]]}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            MonomialIdeal::from_json(r#"{"n":2,"generators":[[1,0],[1]]}"#),
            Err(Error::Parse { .. })
        ));
        let err = MonomialIdeal::from_json("{\"n\":2,\n \"generators\": [[1,0],]}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
