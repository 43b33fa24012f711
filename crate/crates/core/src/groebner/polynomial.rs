use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{check_dims, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, TermOrder};

/// A polynomial over `F_q` with its terms sorted descending in `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    field: PrimeField,
    order: TermOrder,
    terms: Vec<(Monomial, u64)>,
}

impl Polynomial {
    pub fn zero(n: usize, field: PrimeField, order: TermOrder) -> Self {
        Polynomial { n, field, order, terms: Vec::new() }
    }

    /// Collects like terms, reduces coefficients and drops zeros.
    pub fn from_terms(
        n: usize,
        field: PrimeField,
        order: TermOrder,
        terms: impl IntoIterator<Item = (Monomial, u64)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            check_dims(n, m.nvars())?;
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.modulus());
        }
        let mut terms: Vec<(Monomial, u64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Polynomial { n, field, order, terms })
    }

    pub fn monomial(m: Monomial, field: PrimeField, order: TermOrder) -> Self {
        Polynomial { n: m.nvars(), field, order, terms: vec![(m, 1)] }
    }

    /// `x_index` for 0-based `index`.
    pub fn var(n: usize, index: usize, field: PrimeField, order: TermOrder) -> Self {
        Self::monomial(Monomial::var(n, index), field, order)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    /// Terms in descending order.
    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Re-sort under another order.
    pub fn with_order(&self, order: TermOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Polynomial { order, terms, ..*self }
    }

    fn merge(&self, other: &Self, scale: u64) -> Self {
        debug_assert_eq!(self.n, other.n);
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => self.order.compare(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), f.mul(*c, scale)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(self.terms[i].1, f.mul(other.terms[j].1, scale));
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { terms: out, ..*self }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, self.field.neg(1))
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.field.modulus();
        if c == 0 {
            return Polynomial { terms: vec![], ..*self };
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), self.field.mul(*v, c))).collect();
        Polynomial { terms, ..*self }
    }

    /// `c * m * self`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Self {
        let c = c % self.field.modulus();
        if c == 0 {
            return Polynomial { terms: vec![], ..*self };
        }
        let terms = self.terms.iter().map(|(t, v)| (t.mul(m), self.field.mul(*v, c))).collect();
        Polynomial { terms, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Polynomial { terms: vec![], ..*self };
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, *c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Polynomial::monomial(Monomial::one(self.n), self.field, self.order);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Scaled so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) if c != 1 => self.scale(self.field.inv(c)),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let centered = self.field.centered(*c);
            let (neg, abs) = (centered < 0, centered.unsigned_abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
