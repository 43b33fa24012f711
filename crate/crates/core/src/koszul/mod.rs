//! Koszul complexes with monomial coefficients: chains and contractions,
//! multigraded strands and their homology over a prime field, cycle
//! surgery, witness chains for initial coefficients, and `W`-set families.

mod chain;
mod correction;
mod strand;
mod witness;
mod wsets;

use std::cmp::Ordering;
use std::fmt;

pub use chain::{
    compare_leading, leading_monomial, Coefficient, CoefficientModule, KoszulChain, KoszulSpace, LinearFunctional,
};
pub use correction::eliminate_variable;
pub use strand::{
    candidate_multidegrees, cycle_basis, homology_in_total_degree, multigraded_betti, strand, BettiOptions,
    ModuleKind, StrandComplex, StrandRecord, DEFAULT_MAX_GENERATORS,
};
pub use witness::{witness_chain, WitnessChain, WitnessStep};
pub use wsets::{build_w_sets, FirstFree, SeededChooser, WChooser, WFamily};

/// Exterior basis elements are indexed by subsets of `{0, …, n-1}` held in a
/// `u32`, so Koszul complexes are limited to this many variables.
pub const MAX_VARS: usize = 32;

/// A subset `F ⊆ [n]` naming the exterior monomial `e_F`, 0-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExtSet(u32);

impl ExtSet {
    pub const EMPTY: ExtSet = ExtSet(0);

    pub fn from_bits(bits: u32) -> Self {
        ExtSet(bits)
    }

    /// From 0-based indices.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        ExtSet(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    /// `{0, …, p-1}`.
    pub fn initial(p: usize) -> Self {
        ExtSet(if p >= 32 { u32::MAX } else { (1u32 << p) - 1 })
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn insert(self, k: usize) -> Self {
        ExtSet(self.0 | 1 << k)
    }

    pub fn remove(self, k: usize) -> Self {
        ExtSet(self.0 & !(1 << k))
    }

    pub fn union(self, other: Self) -> Self {
        ExtSet(self.0 | other.0)
    }

    pub fn minus(self, other: Self) -> Self {
        ExtSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    /// Ascending 0-based indices.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// `|{f ∈ F : f < k}|`.
    pub fn count_below(self, k: usize) -> usize {
        let mask = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
        (self.0 & mask).count_ones() as usize
    }

    /// `α(F, G) = |{(f, g) : f > g, f ∈ F, g ∈ G}|`, the sign exponent of
    /// `e_F ∧ e_G = (-1)^{α(F,G)} e_{F ∪ G}`.
    pub fn alpha(f: ExtSet, g: ExtSet) -> usize {
        g.iter().map(|x| f.len() - f.count_below(x + 1)).sum()
    }

    /// `x^b` shifted by `ε_F`.
    pub fn shift(self, b: &crate::monomial::Monomial) -> crate::monomial::Monomial {
        self.iter().fold(b.clone(), |m, i| m.times_var(i))
    }

    /// Image under a relabeling, and the number of inversions needed to sort
    /// the relabeled wedge factors.
    pub fn permute(self, perm: &[usize]) -> (ExtSet, usize) {
        let images: Vec<usize> = self.iter().map(|i| perm[i]).collect();
        let mut inv = 0;
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                if images[a] > images[b] {
                    inv += 1;
                }
            }
        }
        (ExtSet::from_indices(images), inv)
    }

    /// The exterior-monomial order: larger sets first, then the set whose
    /// first differing element is smaller.
    pub fn cmp_lex(self, other: Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let first = diff.trailing_zeros();
        if self.0 >> first & 1 == 1 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// All subsets of `self` of size `r`.
    pub fn subsets_of_size(self, r: usize) -> Vec<ExtSet> {
        let elems: Vec<usize> = self.iter().collect();
        let mut out = Vec::new();
        let mut pick = Vec::new();
        fn rec(elems: &[usize], start: usize, r: usize, pick: &mut Vec<usize>, out: &mut Vec<ExtSet>) {
            if pick.len() == r {
                out.push(ExtSet::from_indices(pick.iter().copied()));
                return;
            }
            for i in start..elems.len() {
                pick.push(elems[i]);
                rec(elems, i + 1, r, pick, out);
                pick.pop();
            }
        }
        rec(&elems, 0, r, &mut pick, &mut out);
        out
    }
}

impl fmt::Display for ExtSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "e{{}}");
        }
        write!(f, "e{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ExtSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
