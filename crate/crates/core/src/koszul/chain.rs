//! Elements of `Λ L ⊗ M` for a monomial coefficient module `M`, and the
//! contraction operators acting on them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{check_dims, Error, Result};
use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, TermOrder};

use super::ExtSet;

/// A polynomial coefficient: monomial to nonzero field element.
pub type Coefficient = BTreeMap<Monomial, u64>;

/// The coefficient module of a Koszul complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientModule {
    /// The ring `S` itself.
    Free,
    /// A monomial ideal `I ⊂ S`.
    Ideal(MonomialIdeal),
    /// The quotient `S/I`, with basis the standard monomials.
    Quotient(MonomialIdeal),
}

impl CoefficientModule {
    /// Whether `x^b` is a basis element of the module.
    pub fn admits(&self, b: &Monomial) -> bool {
        match self {
            CoefficientModule::Free => true,
            CoefficientModule::Ideal(i) => i.contains(b),
            CoefficientModule::Quotient(i) => !i.contains(b),
        }
    }

    /// Submodule of a free module, as required for initial-term arguments.
    pub fn embeds_in_free(&self) -> bool {
        !matches!(self, CoefficientModule::Quotient(_))
    }

    fn permuted(&self, perm: &[usize]) -> CoefficientModule {
        let map = |i: &MonomialIdeal| {
            MonomialIdeal::new(i.nvars(), i.generators().iter().map(|g| g.permute(perm))).expect("same n")
        };
        match self {
            CoefficientModule::Free => CoefficientModule::Free,
            CoefficientModule::Ideal(i) => CoefficientModule::Ideal(map(i)),
            CoefficientModule::Quotient(i) => CoefficientModule::Quotient(map(i)),
        }
    }
}

/// Ambient data shared by chains: variable count, field and module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulSpace {
    pub n: usize,
    pub field: PrimeField,
    pub module: CoefficientModule,
}

impl KoszulSpace {
    pub fn new(n: usize, field: PrimeField, module: CoefficientModule) -> Result<Arc<Self>> {
        if n > super::MAX_VARS {
            return Err(Error::Argument(format!("Koszul complexes support at most {} variables", super::MAX_VARS)));
        }
        if let CoefficientModule::Ideal(i) | CoefficientModule::Quotient(i) = &module {
            check_dims(n, i.nvars())?;
        }
        Ok(Arc::new(KoszulSpace { n, field, module }))
    }
}

/// A map `ε^*: L → S` given by the images `μ(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional {
    pub images: Vec<Coefficient>,
}

impl LinearFunctional {
    /// The functional `μ(e_i) = x_i` whose contraction is the Koszul differential.
    pub fn koszul(n: usize) -> Self {
        LinearFunctional { images: (0..n).map(|i| Coefficient::from([(Monomial::var(n, i), 1)])).collect() }
    }

    /// The dual basis vector `e_k^*`.
    pub fn dual_basis(n: usize, k: usize) -> Self {
        let mut images = vec![Coefficient::new(); n];
        images[k].insert(Monomial::one(n), 1);
        LinearFunctional { images }
    }

    pub fn scale(&self, field: PrimeField, c: u64) -> Self {
        LinearFunctional {
            images: self
                .images
                .iter()
                .map(|p| p.iter().filter_map(|(m, &v)| nonzero(m.clone(), field.mul(v, c))).collect())
                .collect(),
        }
    }

    pub fn add(&self, field: PrimeField, other: &Self) -> Self {
        LinearFunctional {
            images: self.images.iter().zip(&other.images).map(|(a, b)| poly_add(field, a, b, 1)).collect(),
        }
    }
}

fn nonzero(m: Monomial, v: u64) -> Option<(Monomial, u64)> {
    (v != 0).then_some((m, v))
}

fn poly_add(field: PrimeField, a: &Coefficient, b: &Coefficient, s: u64) -> Coefficient {
    let mut out = a.clone();
    for (m, &v) in b {
        let e = out.entry(m.clone()).or_insert(0);
        *e = field.add(*e, field.mul(s, v));
        if *e == 0 {
            out.remove(m);
        }
    }
    out
}

/// An element `Σ c · x^b e_F` of `Λ L ⊗ M`.
#[derive(Clone)]
pub struct KoszulChain {
    space: Arc<KoszulSpace>,
    terms: BTreeMap<(ExtSet, Monomial), u64>,
}

impl PartialEq for KoszulChain {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.terms == other.terms
    }
}

impl Eq for KoszulChain {}

impl KoszulChain {
    pub fn zero(space: &Arc<KoszulSpace>) -> Self {
        KoszulChain { space: space.clone(), terms: BTreeMap::new() }
    }

    /// Build from `(F, x^b, c)` terms. Terms outside the module are an
    /// error for free and ideal coefficients and vanish in a quotient.
    pub fn from_terms(space: &Arc<KoszulSpace>, terms: impl IntoIterator<Item = (ExtSet, Monomial, u64)>) -> Result<Self> {
        let mut z = KoszulChain::zero(space);
        for (f, b, c) in terms {
            check_dims(space.n, b.nvars())?;
            if f.max_index().is_some_and(|m| m >= space.n) {
                return Err(Error::Argument(format!("exterior index set {f} exceeds n = {}", space.n)));
            }
            if !space.module.admits(&b) {
                if space.module.embeds_in_free() {
                    return Err(Error::Argument(format!("coefficient {b} is not in the module")));
                }
                continue;
            }
            z.add_term(f, b, c);
        }
        Ok(z)
    }

    pub fn space(&self) -> &Arc<KoszulSpace> {
        &self.space
    }

    pub fn field(&self) -> PrimeField {
        self.space.field
    }

    pub fn nvars(&self) -> usize {
        self.space.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ExtSet, &Monomial, u64)> + '_ {
        self.terms.iter().map(|((f, b), &c)| (*f, b, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, f: ExtSet, b: Monomial, c: u64) {
        let field = self.space.field;
        let c = c % field.modulus();
        if c == 0 {
            return;
        }
        let key = (f, b);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = field.add(*e, c);
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    // add c * x^b e_f, dropping it when x^b leaves the module
    fn add_reduced(&mut self, f: ExtSet, b: Monomial, c: u64) {
        if self.space.module.admits(&b) {
            self.add_term(f, b, c);
        }
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::Argument("chains live in different Koszul spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let mut out = self.clone();
        for ((f, b), &c) in &other.terms {
            out.add_term(*f, b.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.field().neg(1)))
    }

    pub fn scale(&self, c: u64) -> Self {
        let field = self.field();
        let mut out = KoszulChain::zero(&self.space);
        for ((f, b), &v) in &self.terms {
            out.add_term(*f, b.clone(), field.mul(v, c));
        }
        out
    }

    /// Multiply every coefficient by the polynomial `f ∈ S`.
    pub fn mul_poly(&self, f: &Coefficient) -> Self {
        let field = self.field();
        let mut out = KoszulChain::zero(&self.space);
        for ((e, b), &v) in &self.terms {
            for (m, &c) in f {
                out.add_reduced(*e, b.mul(m), field.mul(v, c));
            }
        }
        out
    }

    /// Homological degree, if all terms share one.
    pub fn hdeg(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(f, _)| f.len());
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// `N^n`-degree `b + ε_F`, if all terms share one.
    pub fn multidegree(&self) -> Option<Monomial> {
        let mut it = self.terms.keys().map(|(f, b)| f.shift(b));
        let first = it.next()?;
        it.all(|a| a == first).then_some(first)
    }

    /// Coefficient `m_F` of `e_F`.
    pub fn coefficient(&self, f: ExtSet) -> Coefficient {
        self.terms
            .range((f, Monomial::one(0))..)
            .take_while(|((g, _), _)| *g == f)
            .map(|((_, b), &c)| (b.clone(), c))
            .collect()
    }

    /// Index sets with nonzero coefficient.
    pub fn support(&self) -> Vec<ExtSet> {
        let mut s: Vec<ExtSet> = self.terms.keys().map(|(f, _)| *f).collect();
        s.dedup();
        s
    }

    /// The lex-largest `e_J` with nonzero coefficient, and `m_J`.
    pub fn initial_term(&self) -> Option<(ExtSet, Coefficient)> {
        let j = self.support().into_iter().max_by(|a, b| a.cmp_lex(*b))?;
        Some((j, self.coefficient(j)))
    }

    /// Contraction `∂_μ` against an arbitrary functional.
    pub fn contract(&self, mu: &LinearFunctional) -> Result<Self> {
        check_dims(self.nvars(), mu.images.len())?;
        let field = self.field();
        let mut out = KoszulChain::zero(&self.space);
        for ((f, b), &c) in &self.terms {
            for k in f.iter() {
                let s = field.mul(c, field.sign(f.count_below(k)));
                let rest = f.remove(k);
                for (m, &v) in &mu.images[k] {
                    out.add_reduced(rest, b.mul(m), field.mul(s, v));
                }
            }
        }
        Ok(out)
    }

    /// `∂_k = ∂_{e_k^*}` for 0-based `k`.
    pub fn partial(&self, k: usize) -> Self {
        let field = self.field();
        let mut out = KoszulChain::zero(&self.space);
        for ((f, b), &c) in &self.terms {
            if f.contains(k) {
                out.add_term(f.remove(k), b.clone(), field.mul(c, field.sign(f.count_below(k))));
            }
        }
        out
    }

    /// `∂_I = ∂_{i_1} ∘ … ∘ ∂_{i_t}` for `I = {i_1 < … < i_t}`.
    pub fn partial_set(&self, set: ExtSet) -> Self {
        let mut out = self.clone();
        for k in set.iter().collect::<Vec<_>>().into_iter().rev() {
            out = out.partial(k);
        }
        out
    }

    /// The Koszul differential `∂ = Σ_k x_k ∂_k`.
    pub fn differential(&self) -> Self {
        let field = self.field();
        let n = self.nvars();
        let mut out = KoszulChain::zero(&self.space);
        for ((f, b), &c) in &self.terms {
            for k in f.iter() {
                out.add_reduced(f.remove(k), b.times_var(k), field.mul(c, field.sign(f.count_below(k))));
            }
        }
        debug_assert!(out.terms.keys().all(|(_, b)| b.nvars() == n));
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.differential().is_zero()
    }

    /// Exterior product `self ∧ other`; `self` must have coefficients in `S`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.space.module != CoefficientModule::Free {
            return Err(Error::Argument("left wedge factor must have ring coefficients".into()));
        }
        check_dims(self.nvars(), other.nvars())?;
        if self.field() != other.field() {
            return Err(Error::Argument("wedge factors over different fields".into()));
        }
        let field = self.field();
        let mut out = KoszulChain::zero(&other.space);
        for ((f, b), &c) in &self.terms {
            for ((g, d), &v) in &other.terms {
                if !f.is_disjoint(*g) {
                    continue;
                }
                let s = field.sign(ExtSet::alpha(*f, *g));
                out.add_reduced(f.union(*g), b.mul(d), field.mul(s, field.mul(c, v)));
            }
        }
        Ok(out)
    }

    /// `e_k ∧ self` for 0-based `k`.
    pub fn wedge_var(&self, k: usize) -> Self {
        let field = self.field();
        let mut out = KoszulChain::zero(&self.space);
        for ((f, b), &c) in &self.terms {
            if !f.contains(k) {
                out.add_term(f.insert(k), b.clone(), field.mul(c, field.sign(f.count_below(k))));
            }
        }
        out
    }

    /// Relabel variables and exterior indices: `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_dims(self.nvars(), perm.len())?;
        let space = KoszulSpace::new(self.space.n, self.space.field, self.space.module.permuted(perm))?;
        let field = self.field();
        let mut out = KoszulChain::zero(&space);
        for ((f, b), &c) in &self.terms {
            let (g, sign) = f.permute(perm);
            out.add_term(g, b.permute(perm), field.mul(c, field.sign(sign)));
        }
        Ok(out)
    }

    /// Same terms over the ring `S` (forgetting the submodule).
    pub fn over_ring(&self) -> Result<Self> {
        if !self.space.module.embeds_in_free() {
            return Err(Error::Argument("quotient coefficients do not embed in the ring".into()));
        }
        let space = KoszulSpace::new(self.space.n, self.space.field, CoefficientModule::Free)?;
        Ok(KoszulChain { space, terms: self.terms.clone() })
    }
}

/// Largest monomial of a nonzero coefficient under `order`.
pub fn leading_monomial(c: &Coefficient, order: TermOrder) -> Option<&Monomial> {
    c.keys().max_by(|a, b| order.compare(a, b))
}

pub fn compare_leading(a: &Coefficient, b: &Coefficient, order: TermOrder) -> Option<Ordering> {
    Some(order.compare(leading_monomial(a, order)?, leading_monomial(b, order)?))
}

impl fmt::Display for KoszulChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, ((e, b), &c)) in self.terms.iter().enumerate() {
            let c = field.centered(c);
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            if b.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "{b}*{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KoszulChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KoszulChain[{self}]")
    }
}
