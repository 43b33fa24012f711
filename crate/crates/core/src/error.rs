use thiserror::Error;

use crate::monomial::Monomial;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("ideal is not stable: generator {generator} requires {required}, which is not in the ideal")]
    NotStable {
        generator: Monomial,
        required: Monomial,
    },

    #[error("table is not {d}-linear: beta_{{{i},{j}}} = {beta} lies off the diagonal j = i + {d}")]
    NotLinear { d: usize, i: usize, j: usize, beta: u64 },

    #[error("ideal has {count} minimal generators, above the cap of {cap} (raise it with --max-generators)")]
    GeneratorCap { count: usize, cap: usize },

    #[error("chain is not a cycle")]
    NotACycle,

    #[error("contraction by e_{index} is not a boundary; its class is nonzero in homological degree {hdeg}")]
    Obstruction { index: usize, hdeg: usize },

    #[error("contraction by e_{index} is a boundary but no correcting boundary kills it in this strand")]
    CorrectionUnavailable { index: usize },

    #[error("chooser broke its contract: {0}")]
    ChooserContract(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no consensus across {trials} trials: observed {} distinct initial ideals; rerun with a larger prime or another seed", observed.len())]
    GinInstability {
        trials: usize,
        observed: Vec<crate::ideal::MonomialIdeal>,
    },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
