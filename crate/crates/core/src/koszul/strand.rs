//! Multidegree slices of `K(x; M)` and their homology.
//!
//! In multidegree `a`, the Koszul complex of a monomial module has basis
//! `e_F ⊗ x^{a - ε_F}` over the sets `F` with `x^{a-ε_F}` a basis monomial
//! of `M`. The homology of this finite complex is `Tor_i(M, K)_a`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{BettiTable, MultigradedBettiTable};
use crate::error::{check_dims, Error, Result};
use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::linalg::{self, SparseMatrix, DEFAULT_SPARSE_THRESHOLD};
use crate::monomial::{monomials_of_degree, Monomial};

use super::{CoefficientModule, ExtSet, KoszulChain, KoszulSpace, MAX_VARS};

pub const DEFAULT_MAX_GENERATORS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleKind {
    #[default]
    Ideal,
    Quotient,
}

impl ModuleKind {
    fn module(self, ideal: &MonomialIdeal) -> CoefficientModule {
        match self {
            ModuleKind::Ideal => CoefficientModule::Ideal(ideal.clone()),
            ModuleKind::Quotient => CoefficientModule::Quotient(ideal.clone()),
        }
    }
}

/// The multidegree-`a` slice of the Koszul complex on the variables in
/// `allowed`, with coefficients in `I` or `S/I`.
#[derive(Debug, Clone)]
pub struct StrandComplex {
    a: Monomial,
    space: Arc<KoszulSpace>,
    allowed: ExtSet,
    basis: Vec<Vec<ExtSet>>,
    index: Vec<HashMap<ExtSet, usize>>,
    /// `boundaries[p]: C_p → C_{p-1}`; `boundaries[0]` has no rows.
    boundaries: Vec<SparseMatrix>,
}

/// One line of the strand dump: `{"a": [...], "dims": [...], "homology": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrandRecord {
    pub a: Monomial,
    pub dims: Vec<usize>,
    pub homology: Vec<u64>,
}

/// Strand of the full Koszul complex.
pub fn strand(ideal: &MonomialIdeal, a: &Monomial, field: PrimeField, kind: ModuleKind) -> Result<StrandComplex> {
    StrandComplex::build(ideal, a, field, kind, ExtSet::initial(ideal.nvars()))
}

impl StrandComplex {
    pub fn build(
        ideal: &MonomialIdeal,
        a: &Monomial,
        field: PrimeField,
        kind: ModuleKind,
        allowed: ExtSet,
    ) -> Result<StrandComplex> {
        let n = ideal.nvars();
        check_dims(n, a.nvars())?;
        let space = KoszulSpace::new(n, field, kind.module(ideal))?;
        let support = ExtSet::from_bits(a.support_mask() as u32);
        let usable = support.bits() & allowed.bits();
        let mut basis: Vec<Vec<ExtSet>> = vec![Vec::new(); n + 1];
        // enumerate subsets of `usable`
        let mut sub: u32 = 0;
        loop {
            let f = ExtSet::from_bits(sub);
            if space.module.admits(&coefficient_monomial(a, f)) {
                basis[f.len()].push(f);
            }
            if sub == usable {
                break;
            }
            sub = (sub.wrapping_sub(usable)) & usable;
        }
        for b in &mut basis {
            b.sort();
        }
        let index: Vec<HashMap<ExtSet, usize>> =
            basis.iter().map(|b| b.iter().enumerate().map(|(i, &f)| (f, i)).collect()).collect();
        let mut boundaries = Vec::with_capacity(n + 1);
        boundaries.push(SparseMatrix::zeros(0, basis[0].len()));
        for p in 1..=n {
            let mut trip = Vec::new();
            for (col, &f) in basis[p].iter().enumerate() {
                for k in f.iter() {
                    if let Some(&row) = index[p - 1].get(&f.remove(k)) {
                        trip.push((row, col, field.sign(f.count_below(k))));
                    }
                }
            }
            boundaries.push(SparseMatrix::from_triplets(field, basis[p - 1].len(), basis[p].len(), trip));
        }
        for p in 2..=n {
            assert!(
                boundaries[p - 1].mul(field, &boundaries[p]).is_zero(),
                "boundary maps do not compose to zero at p = {p}"
            );
        }
        Ok(StrandComplex { a: a.clone(), space, allowed, basis, index, boundaries })
    }

    pub fn multidegree(&self) -> &Monomial {
        &self.a
    }

    pub fn space(&self) -> &Arc<KoszulSpace> {
        &self.space
    }

    pub fn field(&self) -> PrimeField {
        self.space.field
    }

    pub fn allowed(&self) -> ExtSet {
        self.allowed
    }

    pub fn top(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.basis.get(p).map_or(0, Vec::len)
    }

    pub fn basis(&self, p: usize) -> &[ExtSet] {
        self.basis.get(p).map_or(&[], Vec::as_slice)
    }

    /// `∂_p: C_p → C_{p-1}`.
    pub fn boundary(&self, p: usize) -> &SparseMatrix {
        &self.boundaries[p]
    }

    fn rank(&self, p: usize, threshold: usize) -> usize {
        if p == 0 || p > self.top() {
            0
        } else {
            linalg::rank_with_threshold(self.field(), &self.boundaries[p], threshold)
        }
    }

    pub fn homology(&self) -> Vec<u64> {
        self.homology_with_threshold(DEFAULT_SPARSE_THRESHOLD)
    }

    pub fn homology_with_threshold(&self, threshold: usize) -> Vec<u64> {
        let ranks: Vec<usize> = (0..=self.top() + 1).map(|p| self.rank(p, threshold)).collect();
        (0..=self.top()).map(|p| (self.dim(p) - ranks[p] - ranks[p + 1]) as u64).collect()
    }

    pub fn record(&self) -> StrandRecord {
        StrandRecord { a: self.a.clone(), dims: self.dims(), homology: self.homology() }
    }

    pub fn chain_from_vector(&self, p: usize, v: &[u64]) -> KoszulChain {
        assert_eq!(v.len(), self.dim(p));
        let terms = self.basis[p]
            .iter()
            .zip(v)
            .filter(|(_, &c)| c != 0)
            .map(|(&f, &c)| (f, coefficient_monomial(&self.a, f), c));
        KoszulChain::from_terms(&self.space, terms).expect("strand basis lies in the module")
    }

    /// Coordinates of a chain of homological degree `p` and multidegree `a`.
    pub fn vector_from_chain(&self, p: usize, z: &KoszulChain) -> Result<Vec<u64>> {
        if z.space() != &self.space {
            return Err(Error::Argument("chain is not over this strand's module".into()));
        }
        let mut v = vec![0; self.dim(p)];
        for (f, b, c) in z.terms() {
            if f.len() != p || f.shift(b) != self.a {
                return Err(Error::Argument(format!(
                    "term {b}*{f} is not in homological degree {p} and multidegree {}",
                    self.a
                )));
            }
            let idx = self.index[p]
                .get(&f)
                .ok_or_else(|| Error::Argument(format!("term {b}*{f} uses a variable outside the strand")))?;
            v[*idx] = c;
        }
        Ok(v)
    }

    /// A basis of the cycles in homological degree `p`.
    pub fn cycle_basis(&self, p: usize) -> Vec<KoszulChain> {
        if p > self.top() || self.dim(p) == 0 {
            return Vec::new();
        }
        linalg::kernel_basis(self.field(), &self.boundaries[p])
            .into_iter()
            .map(|v| self.chain_from_vector(p, &v))
            .collect()
    }

    /// Some `y` in degree `p + 1` with `∂y = z`, if `z` is a boundary.
    pub fn preimage(&self, p: usize, z: &KoszulChain) -> Result<Option<KoszulChain>> {
        let v = self.vector_from_chain(p, z)?;
        if p + 1 > self.top() {
            return Ok(v.iter().all(|&c| c == 0).then(|| KoszulChain::zero(&self.space)));
        }
        Ok(linalg::solve(self.field(), &self.boundaries[p + 1], &v).map(|y| self.chain_from_vector(p + 1, &y)))
    }
}

fn coefficient_monomial(a: &Monomial, f: ExtSet) -> Monomial {
    f.iter().fold(a.clone(), |m, i| m.div_var(i).expect("F lies in the support of a"))
}

/// `lcm`s of all nonempty subsets of the generators, deduplicated.
pub fn candidate_multidegrees(ideal: &MonomialIdeal) -> Vec<Monomial> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut lcms: Vec<Monomial> = Vec::new();
    for g in ideal.generators() {
        let mut fresh = vec![g.clone()];
        fresh.extend(lcms.iter().map(|l| l.lcm(g)));
        for m in fresh {
            if seen.insert(m.clone()) {
                lcms.push(m);
            }
        }
    }
    lcms.sort();
    lcms
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BettiOptions {
    pub max_generators: usize,
    pub parallel: bool,
    pub sparse_threshold: usize,
    pub kind: ModuleKind,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions {
            max_generators: DEFAULT_MAX_GENERATORS,
            parallel: false,
            sparse_threshold: DEFAULT_SPARSE_THRESHOLD,
            kind: ModuleKind::Ideal,
        }
    }
}

/// Multigraded and coarse Betti tables of `I` (or `S/I`) from strand
/// homology at every candidate multidegree.
pub fn multigraded_betti(
    ideal: &MonomialIdeal,
    field: PrimeField,
    opts: &BettiOptions,
) -> Result<(MultigradedBettiTable, BettiTable)> {
    let n = ideal.nvars();
    if n > MAX_VARS {
        return Err(Error::Argument(format!("at most {MAX_VARS} variables are supported")));
    }
    if ideal.num_generators() > opts.max_generators {
        return Err(Error::GeneratorCap { count: ideal.num_generators(), cap: opts.max_generators });
    }
    let mut candidates = candidate_multidegrees(ideal);
    if opts.kind == ModuleKind::Quotient && !ideal.is_unit() {
        candidates.insert(0, Monomial::one(n));
    }
    let compute = |a: &Monomial| -> Result<(Monomial, Vec<u64>)> {
        let s = strand(ideal, a, field, opts.kind)?;
        Ok((a.clone(), s.homology_with_threshold(opts.sparse_threshold)))
    };
    let results: Vec<(Monomial, Vec<u64>)> = if opts.parallel {
        candidates.par_iter().map(compute).collect::<Result<_>>()?
    } else {
        candidates.iter().map(compute).collect::<Result<_>>()?
    };
    let mut multi = MultigradedBettiTable::new(n);
    for (a, h) in results {
        for (i, b) in h.into_iter().enumerate() {
            multi.add(i, a.clone(), b);
        }
    }
    let coarse = multi.coarse();
    Ok((multi, coarse))
}

/// Cycles of `K(x; I)` in homological degree `p` and multidegree `a`.
pub fn cycle_basis(ideal: &MonomialIdeal, p: usize, a: &Monomial, field: PrimeField) -> Result<Vec<KoszulChain>> {
    Ok(strand(ideal, a, field, ModuleKind::Ideal)?.cycle_basis(p))
}

/// `dim H_p(x_F; M)_t`: homology of the Koszul complex on the variables in
/// `allowed`, summed over all multidegrees of total degree `t`.
pub fn homology_in_total_degree(
    ideal: &MonomialIdeal,
    field: PrimeField,
    kind: ModuleKind,
    allowed: ExtSet,
    p: usize,
    total_degree: u32,
) -> Result<u64> {
    let mut sum = 0;
    for a in monomials_of_degree(ideal.nvars(), total_degree) {
        let s = StrandComplex::build(ideal, &a, field, kind, allowed)?;
        sum += s.homology().get(p).copied().unwrap_or(0);
    }
    Ok(sum)
}
