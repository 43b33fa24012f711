//! Graded Betti numbers of monomial ideals.
//!
//! Stable ideals get their tables in closed form from the Eliahou-Kervaire
//! formula ([`ek::ek_betti`]); any monomial ideal can be resolved through
//! multigraded Koszul homology over a prime field ([`koszul::multigraded_betti`]).
//! On top of those sit checkers for lower bounds on linear strands and the
//! sandwich between revlex and lex segment ideals.

pub mod betti;
pub mod ek;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod segments;
pub mod suites;
pub mod verify;

pub use betti::{BettiTable, MultigradedBettiTable};
pub use error::{Error, Result};
pub use field::PrimeField;
pub use ideal::MonomialIdeal;
pub use monomial::{Monomial, TermOrder};
