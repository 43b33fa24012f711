use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::TermOrder;

use super::{apply_change, buchberger, initial_ideal, CoordinateChange, Polynomial};

pub const DEFAULT_TRIALS: usize = 3;

/// Primes below this bound make a random matrix land outside the generic
/// locus often enough to matter.
pub const SMALL_PRIME_WARNING: u64 = 10007;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GinReport {
    pub ideal: MonomialIdeal,
    /// The characteristic the computation ran in.
    pub prime: u64,
    pub trials: usize,
    pub seed: u64,
    /// Seed of the coordinate change used in each trial.
    pub trial_seeds: Vec<u64>,
    pub warning: Option<String>,
}

/// `in_rlex(g(I))` for `trials` independent random `g`, required to agree.
pub fn gin_probabilistic(gens: &[Polynomial], trials: usize, seed: u64) -> Result<GinReport> {
    if trials < 2 {
        return Err(Error::Argument("gin needs at least 2 trials".into()));
    }
    let Some(first) = gens.first() else {
        return Err(Error::UndefinedInput("gin of an empty generator list".into()));
    };
    let (n, field) = (first.nvars(), first.field());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trial_seeds: Vec<u64> = (0..trials).map(|_| rng.next_u64()).collect();
    let observed: Vec<MonomialIdeal> = trial_seeds
        .par_iter()
        .map(|&s| {
            let g = CoordinateChange::random(n, field, s);
            let moved = gens
                .iter()
                .map(|f| apply_change(&g, &f.with_order(TermOrder::RevLex)))
                .collect::<Result<Vec<_>>>()?;
            let gb = buchberger(&moved, TermOrder::RevLex)?;
            if gb.is_empty() {
                return Ok(MonomialIdeal::zero(n));
            }
            initial_ideal(&gb, TermOrder::RevLex)
        })
        .collect::<Result<_>>()?;
    if observed.iter().any(|o| *o != observed[0]) {
        let mut distinct = observed.clone();
        distinct.sort_by(crate::ideal::cmp_ideals);
        distinct.dedup();
        return Err(Error::GinInstability { trials, observed: distinct });
    }
    let warning = (field.modulus() < SMALL_PRIME_WARNING).then(|| {
        format!(
            "field prime {} is below {SMALL_PRIME_WARNING}; random coordinate changes may miss the generic locus",
            field.modulus()
        )
    });
    Ok(GinReport { ideal: observed[0].clone(), prime: field.modulus(), trials, seed, trial_seeds, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groebner::parse_polynomials;

    fn polys(text: &str, n: usize, q: u64) -> Vec<Polynomial> {
        parse_polynomials(text, Some(n), PrimeField::new(q).unwrap(), TermOrder::RevLex).unwrap()
    }

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    #[test]
    fn principal_square() {
        let r = gin_probabilistic(&polys("x1^2", 3, 32003), 3, 5).unwrap();
        assert_eq!(r.ideal, ideal(3, &[&[2, 0, 0]]));
        assert_eq!(r.prime, 32003);
        assert!(r.warning.is_none());
    }

    #[test]
    fn last_variable_moves_to_first() {
        let r = gin_probabilistic(&polys("x2", 2, 32003), 3, 9).unwrap();
        assert_eq!(r.ideal, ideal(2, &[&[1, 0]]));
    }

    #[test]
    fn gin_of_complete_intersection_is_stable() {
        let r = gin_probabilistic(&polys("x1^2\nx2^2", 2, 32003), 3, 1).unwrap();
        assert_eq!(r.ideal, ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(gin_probabilistic(&polys("x1", 2, 32003), 1, 0).is_err());
        assert!(gin_probabilistic(&[], 3, 0).is_err());
    }

    #[test]
    fn small_prime_warns() {
        let r = gin_probabilistic(&polys("x1", 1, 101), 2, 0).unwrap();
        assert!(r.warning.is_some());
    }

    #[test]
    fn reproducible() {
        let gens = polys("x1*x2\nx2*x3\nx1*x3", 3, 32003);
        assert_eq!(gin_probabilistic(&gens, 3, 4).unwrap(), gin_probabilistic(&gens, 3, 4).unwrap());
    }
}
