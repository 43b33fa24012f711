use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg::{self, SparseMatrix};

use super::strand::{ModuleKind, StrandComplex};
use super::{CoefficientModule, ExtSet, KoszulChain};

fn strand_like(z: &KoszulChain, a: &crate::monomial::Monomial) -> Result<StrandComplex> {
    let (ideal, kind) = match &z.space().module {
        CoefficientModule::Free => (MonomialIdeal::unit(z.nvars()), ModuleKind::Ideal),
        CoefficientModule::Ideal(i) => (i.clone(), ModuleKind::Ideal),
        CoefficientModule::Quotient(i) => (i.clone(), ModuleKind::Quotient),
    };
    StrandComplex::build(&ideal, a, z.field(), kind, ExtSet::initial(z.nvars()))
}

fn rehome(z: &KoszulChain, s: &StrandComplex) -> Result<KoszulChain> {
    KoszulChain::from_terms(s.space(), z.terms().map(|(f, b, c)| (f, b.clone(), c)))
}

/// Replace the cycle `z` by a homologous cycle `z + ∂r` that avoids `e_j`
/// (0-based `j`), i.e. with `∂_j` of the result equal to zero.
///
/// Fails with [`Error::Obstruction`] when `∂_j(z)` is not a boundary, and
/// with [`Error::CorrectionUnavailable`] when it is a boundary but no
/// boundary in the same multidegree cancels it.
pub fn eliminate_variable(z: &KoszulChain, j: usize) -> Result<KoszulChain> {
    if j >= z.nvars() {
        return Err(Error::Argument(format!("variable index {j} out of range")));
    }
    if z.is_zero() {
        return Ok(z.clone());
    }
    let (Some(p), Some(a)) = (z.hdeg(), z.multidegree()) else {
        return Err(Error::Argument("chain must be homogeneous in both gradings".into()));
    };
    if !z.is_cycle() {
        return Err(Error::NotACycle);
    }
    let dz = z.partial(j);
    if dz.is_zero() {
        return Ok(z.clone());
    }

    let lower = strand_like(z, &a.div_var(j).expect("e_j occurs in z"))?;
    let dz_home = rehome(&dz, &lower)?;
    if lower.preimage(p - 1, &dz_home)?.is_none() {
        return Err(Error::Obstruction { index: j + 1, hdeg: p - 1 });
    }

    // find r in C_{p+1}(a) with ∂_j ∂ r = -∂_j z
    let here = strand_like(z, &a)?;
    let field = z.field();
    let cols = here.dim(p + 1);
    let mut trip = Vec::new();
    for c in 0..cols {
        let mut unit = vec![0; cols];
        unit[c] = 1;
        let image = here.chain_from_vector(p + 1, &unit).differential().partial(j);
        let image = rehome(&image, &lower)?;
        for (r, v) in lower.vector_from_chain(p - 1, &image)?.into_iter().enumerate() {
            if v != 0 {
                trip.push((r, c, v));
            }
        }
    }
    let m = SparseMatrix::from_triplets(field, lower.dim(p - 1), cols, trip);
    let target: Vec<u64> = lower.vector_from_chain(p - 1, &dz_home)?.into_iter().map(|v| field.neg(v)).collect();
    let x = linalg::solve(field, &m, &target).ok_or(Error::CorrectionUnavailable { index: j + 1 })?;
    let r = here.chain_from_vector(p + 1, &x);
    let correction = KoszulChain::from_terms(z.space(), r.differential().terms().map(|(f, b, c)| (f, b.clone(), c)))?;
    let out = z.add(&correction)?;
    debug_assert!(out.partial(j).is_zero());
    Ok(out)
}
