//! Monomials `x^a` as exponent vectors and the term orders used throughout.
//!
//! Variables are 0-based internally; rendering uses the 1-based names
//! `x1 … xn`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dims, Error, Result};

/// A monomial `x^a`, stored as its exponent vector `a ∈ N^n`.
///
/// The derived `Ord` is plain lexicographic comparison of the exponent
/// vectors and exists only so monomials can key ordered maps. Use
/// [`TermOrder`] for the orders that carry mathematical meaning.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The unit monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_{index+1}` (0-based index).
    pub fn var(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// 0-based index of the largest variable dividing `self`, i.e. `m(x^a) - 1`.
    pub fn max_index(&self) -> Result<usize> {
        self.0
            .iter()
            .rposition(|&e| e > 0)
            .ok_or_else(|| Error::UndefinedInput("m(x^a) is undefined for the unit monomial".into()))
    }

    /// Bitmask of the variables that divide `self`.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn times_var(&self, index: usize) -> Monomial {
        let mut e = self.0.clone();
        e[index] += 1;
        Monomial(e)
    }

    /// Divide by `x_{index+1}`; `None` if that variable does not divide.
    pub fn div_var(&self, index: usize) -> Option<Monomial> {
        if self.0[index] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[index] -= 1;
        Some(Monomial(e))
    }

    /// `x_to · self / x_from`, the elementary exchange used by stability.
    pub fn exchange(&self, from: usize, to: usize) -> Option<Monomial> {
        self.div_var(from).map(|m| m.times_var(to))
    }

    /// Relabel variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut e = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            e[perm[i]] = x;
        }
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Term orders on monomials, all with variable priority `x1 > x2 > … > xn`.
///
/// `Lex` and `RevLex` compare total degree first, then break ties the
/// usual way. `GradedLex` is the degree-refining order used for initial
/// terms of Koszul coefficients; since `Lex` is already degree-first the
/// two compare identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum TermOrder {
    Lex,
    #[default]
    RevLex,
    GradedLex,
}

impl TermOrder {
    /// Compare two monomials of equal length. Callers guarantee the lengths.
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            other => return other,
        }
        match self {
            TermOrder::Lex | TermOrder::GradedLex => {
                // first differing index, larger exponent wins
                for (x, y) in a.0.iter().zip(&b.0) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            TermOrder::RevLex => {
                // last differing index, smaller exponent wins
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn checked_compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        check_dims(a.nvars(), b.nvars())?;
        Ok(self.compare(a, b))
    }
}

impl std::str::FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(TermOrder::Lex),
            "rlex" | "revlex" => Ok(TermOrder::RevLex),
            "graded-lex" | "glex" => Ok(TermOrder::GradedLex),
            _ => Err(Error::Argument(format!("unknown term order {s:?}"))),
        }
    }
}

pub fn cmp_rlex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    TermOrder::RevLex.checked_compare(a, b)
}

pub fn cmp_lex(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    TermOrder::Lex.checked_compare(a, b)
}

/// `m(x^a)` in 1-based numbering: the largest `i` with `x_i | x^a`.
pub fn max_index(a: &Monomial) -> Result<usize> {
    a.max_index().map(|i| i + 1)
}

/// All monomials of degree `d` in `n` variables, in no particular order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == n {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(n, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn rlex_examples() {
        assert_eq!(cmp_rlex(&m(&[2, 0, 0]), &m(&[1, 1, 0])).unwrap(), Ordering::Greater);
        assert_eq!(cmp_rlex(&m(&[1, 1]), &m(&[1, 1])).unwrap(), Ordering::Equal);
        assert_eq!(cmp_rlex(&m(&[0, 2, 0]), &m(&[1, 0, 1])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn lex_examples() {
        assert_eq!(cmp_lex(&m(&[2, 0, 0]), &m(&[1, 1, 0])).unwrap(), Ordering::Greater);
        assert_eq!(cmp_lex(&m(&[1, 0, 1]), &m(&[0, 2, 0])).unwrap(), Ordering::Greater);
        assert_eq!(cmp_lex(&m(&[0, 0]), &m(&[0, 0])).unwrap(), Ordering::Equal);
    }

    #[test]
    fn degree_dominates() {
        assert_eq!(cmp_lex(&m(&[0, 0, 2]), &m(&[1, 0, 0])).unwrap(), Ordering::Greater);
        assert_eq!(cmp_rlex(&m(&[0, 0, 2]), &m(&[1, 0, 0])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn mismatched_lengths_error() {
        assert!(matches!(
            cmp_lex(&m(&[1, 0]), &m(&[1, 0, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert!(cmp_rlex(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn max_index_examples() {
        assert_eq!(max_index(&m(&[1, 1, 0])).unwrap(), 2);
        assert_eq!(max_index(&m(&[0, 0, 3])).unwrap(), 3);
        assert_eq!(max_index(&m(&[2, 0, 0])).unwrap(), 1);
        assert!(matches!(max_index(&m(&[0, 0])), Err(Error::UndefinedInput(_))));
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(2, 0), vec![m(&[0, 0])]);
    }

    #[test]
    fn display() {
        assert_eq!(m(&[2, 1, 0]).to_string(), "x1^2*x2");
        assert_eq!(m(&[0, 0]).to_string(), "1");
    }
}
