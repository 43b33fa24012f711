//! A small exact Gröbner engine over `F_q`: linear coordinate changes,
//! Buchberger's algorithm and probabilistic generic initial ideals.

mod gin;
mod parse;
mod polynomial;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use gin::{gin_probabilistic, GinReport, DEFAULT_TRIALS, SMALL_PRIME_WARNING};
pub use parse::parse_polynomials;
pub use polynomial::Polynomial;

use crate::error::{check_dims, Error, Result};
use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::linalg::rank_dense;
use crate::monomial::{Monomial, TermOrder};

/// An invertible `n × n` matrix `g` acting by `x_j ↦ Σ_i g_{i,j} x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateChange {
    /// Row-major: `matrix[i][j] = g_{i,j}`.
    pub matrix: Vec<Vec<u64>>,
    pub seed: Option<u64>,
    #[serde(skip)]
    field: PrimeField,
}

impl CoordinateChange {
    pub fn new(field: PrimeField, matrix: Vec<Vec<u64>>) -> Result<Self> {
        let n = matrix.len();
        if let Some(row) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: row.len() });
        }
        let matrix: Vec<Vec<u64>> = matrix.into_iter().map(|r| r.into_iter().map(|v| v % field.modulus()).collect()).collect();
        if rank_dense(field, matrix.clone(), n) != n {
            return Err(Error::Argument("coordinate change matrix is singular".into()));
        }
        Ok(CoordinateChange { matrix, seed: None, field })
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let matrix = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        CoordinateChange { matrix, seed: None, field }
    }

    /// Uniform over invertible matrices: draw entries uniformly and reject
    /// singular draws.
    pub fn random(n: usize, field: PrimeField, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let matrix: Vec<Vec<u64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..field.modulus())).collect()).collect();
            if let Ok(mut g) = CoordinateChange::new(field, matrix) {
                g.seed = Some(seed);
                return g;
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.matrix.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Matrix product `self · other`. Applying `g` and then `h` is the same
    /// as applying `h.product(&g)`.
    pub fn product(&self, other: &CoordinateChange) -> Result<CoordinateChange> {
        let n = self.nvars();
        check_dims(n, other.nvars())?;
        let f = self.field;
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(0, |acc, l| f.add(acc, f.mul(self.matrix[i][l], other.matrix[l][j])))).collect())
            .collect();
        Ok(CoordinateChange { matrix, seed: None, field: f })
    }

    /// The image of `x_j`, 0-based.
    pub fn image_of_var(&self, j: usize, order: TermOrder) -> Polynomial {
        let n = self.nvars();
        Polynomial::from_terms(n, self.field, order, (0..n).map(|i| (Monomial::var(n, i), self.matrix[i][j])))
            .expect("dimensions agree")
    }
}

/// Substitute `x_j ↦ Σ_i g_{i,j} x_i` into `f`.
pub fn apply_change(g: &CoordinateChange, f: &Polynomial) -> Result<Polynomial> {
    check_dims(g.nvars(), f.nvars())?;
    if g.field() != f.field() {
        return Err(Error::Argument("coordinate change and polynomial live over different fields".into()));
    }
    let n = f.nvars();
    let order = f.order();
    let images: Vec<Polynomial> = (0..n).map(|j| g.image_of_var(j, order)).collect();
    let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::monomial(Monomial::one(n), f.field(), order), p.clone()]).collect();
    let mut out = Polynomial::zero(n, f.field(), order);
    for (m, c) in f.terms() {
        let mut term = Polynomial::monomial(Monomial::one(n), f.field(), order).scale(*c);
        for (j, &e) in m.exponents().iter().enumerate() {
            while powers[j].len() <= e as usize {
                let next = powers[j].last().expect("seeded").mul(&images[j]);
                powers[j].push(next);
            }
            term = term.mul(&powers[j][e as usize]);
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let l = lf.lcm(lg);
    let field = f.field();
    let a = f.mul_term(&l.div(lf).expect("divides"), field.inv(cf));
    let b = g.mul_term(&l.div(lg).expect("divides"), field.inv(cg));
    a.sub(&b)
}

/// Full normal form of `f` modulo `basis`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = f.field();
    let mut p = f.clone();
    let mut rest = Polynomial::zero(f.nvars(), field, f.order());
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c)) {
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|l| l.divides(&m)));
        match divisor {
            Some(g) => {
                let (l, cg) = g.leading_term().expect("nonzero");
                let q = m.div(l).expect("divides");
                p = p.sub(&g.mul_term(&q, field.mul(c, field.inv(cg))));
            }
            None => {
                let lead = Polynomial::monomial(m, field, f.order()).scale(c);
                rest = rest.add(&lead);
                p = p.sub(&lead);
            }
        }
    }
    rest
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`,
/// monic and sorted by descending leading monomial.
///
/// Pairs are processed smallest lcm degree first, skipping pairs whose
/// leading monomials are coprime.
pub fn buchberger(gens: &[Polynomial], order: TermOrder) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Err(Error::UndefinedInput("Buchberger needs at least one generator".into()));
    };
    let n = first.nvars();
    for g in gens {
        check_dims(n, g.nvars())?;
        if g.field() != first.field() {
            return Err(Error::Argument("generators over different fields".into()));
        }
    }
    let mut basis: Vec<Polynomial> =
        gens.iter().map(|g| g.with_order(order)).filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let push_pairs = |basis: &[Polynomial], pairs: &mut BTreeSet<(u64, usize, usize)>, j: usize| {
        for i in 0..j {
            let (a, b) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
            if a.gcd(b).is_one() {
                continue;
            }
            pairs.insert((a.lcm(b).degree(), i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut pairs, j);
    }
    while let Some(pair) = pairs.pop_first() {
        let (_, i, j) = pair;
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            basis.push(r.monic());
            push_pairs(&basis, &mut pairs, basis.len() - 1);
        }
    }
    Ok(interreduce(basis))
}

fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lh = h.leading_monomial().expect("nonzero");
            l != k && lh.divides(lg) && (lh != lg || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let g = &minimal[k];
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, h)| h.clone()).collect();
            let lead = Polynomial::monomial(g.leading_monomial().expect("nonzero").clone(), g.field(), g.order());
            lead.add(&reduce(&g.sub(&lead), &others))
        })
        .collect();
    reduced.sort_by(|a, b| a.order().compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}

/// Every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    (0..basis.len()).all(|j| (0..j).all(|i| reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero()))
}

/// The monomial ideal of leading monomials of a Gröbner basis.
pub fn initial_ideal(gb: &[Polynomial], order: TermOrder) -> Result<MonomialIdeal> {
    let Some(first) = gb.first() else {
        return Err(Error::UndefinedInput("initial ideal of an empty basis".into()));
    };
    let n = first.nvars();
    let leads = gb.iter().filter_map(|g| g.with_order(order).leading_monomial().cloned());
    MonomialIdeal::new(n, leads)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn polys(text: &str, n: usize) -> Vec<Polynomial> {
        parse_polynomials(text, Some(n), f(), TermOrder::RevLex).unwrap()
    }

    #[test]
    fn identity_and_swap() {
        let p = polys("3*x1^2*x2 - x3^3 + 4", 3).remove(0);
        assert_eq!(apply_change(&CoordinateChange::identity(3, f()), &p).unwrap(), p);
        let swap = CoordinateChange::new(f(), vec![vec![0, 1], vec![1, 0]]).unwrap();
        let x1 = polys("x1", 2).remove(0);
        assert_eq!(apply_change(&swap, &x1).unwrap(), polys("x2", 2).remove(0));
    }

    #[test]
    fn generic_image_of_x2() {
        let g = CoordinateChange::new(f(), vec![vec![2, 5], vec![3, 7]]).unwrap();
        let x2 = polys("x2", 2).remove(0);
        assert_eq!(apply_change(&g, &x2).unwrap(), polys("5*x1 + 7*x2", 2).remove(0));
    }

    #[test]
    fn singular_matrices_are_rejected() {
        assert!(CoordinateChange::new(f(), vec![vec![1, 2], vec![2, 4]]).is_err());
        assert!(CoordinateChange::new(f(), vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn composition_is_matrix_product() {
        let g = CoordinateChange::random(3, f(), 1);
        let h = CoordinateChange::random(3, f(), 2);
        let p = polys("x1^2*x3 - 2*x2*x3 + x1", 3).remove(0);
        let twice = apply_change(&h, &apply_change(&g, &p).unwrap()).unwrap();
        assert_eq!(twice, apply_change(&h.product(&g).unwrap(), &p).unwrap());
    }

    #[test]
    fn monomial_inputs_are_their_own_basis() {
        let gb = buchberger(&polys("x1^2\nx1*x2", 2), TermOrder::RevLex).unwrap();
        assert_eq!(gb, polys("x1^2\nx1*x2", 2));
    }

    #[test]
    fn linear_example() {
        let gb = buchberger(&polys("x1 + x2\nx2", 2), TermOrder::RevLex).unwrap();
        assert_eq!(gb, polys("x1\nx2", 2));
    }

    #[test]
    fn principal_is_unchanged() {
        let gb = buchberger(&polys("x1^2 - x2^2", 2), TermOrder::RevLex).unwrap();
        assert_eq!(gb, polys("x1^2 - x2^2", 2));
    }

    #[test]
    fn initial_ideal_examples() {
        let lin = polys("x1 + x2", 2);
        assert_eq!(initial_ideal(&lin, TermOrder::RevLex).unwrap(), MonomialIdeal::from_exponents(2, &[&[1, 0]]).unwrap());
        let sq = polys("x1^2 + 2*x1*x2 + x2^2", 2);
        let gb = buchberger(&sq, TermOrder::RevLex).unwrap();
        assert_eq!(initial_ideal(&gb, TermOrder::RevLex).unwrap(), MonomialIdeal::from_exponents(2, &[&[2, 0]]).unwrap());
    }

    #[test]
    fn nontrivial_basis_is_verified() {
        let gens = polys("x1^2 - x2*x3\nx1*x2 - x3^2\nx2^2 - x1*x3", 3);
        let gb = buchberger(&gens, TermOrder::RevLex).unwrap();
        assert!(is_groebner_basis(&gb));
        let shuffled: Vec<Polynomial> = gens.iter().rev().cloned().collect();
        let gb2 = buchberger(&shuffled, TermOrder::RevLex).unwrap();
        assert_eq!(gb, gb2);
        for g in &gens {
            assert!(reduce(g, &gb).is_zero());
        }
        let lex = buchberger(&gens, TermOrder::Lex).unwrap();
        assert!(is_groebner_basis(&lex));
    }
}
