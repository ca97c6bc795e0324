//! Exact noncommutative Riemannian geometry on finite groups.
//!
//! A conjugacy class of a finite group generates a bicovariant first-order
//! calculus. This crate builds that calculus over cyclotomic numbers and works
//! out connections, curvature, Dirac operators and their spectra exactly.

pub mod calculus;
pub mod connection;
pub mod curvature;
pub mod dirac;
pub mod error;
pub mod exact;
pub mod group;
pub mod metric;

#[cfg(test)]
mod testing;

pub use calculus::{Calculus, GroupFunction, OneForm, TwoForm};
pub use error::{Error, GroupAxiomError, Result};
pub use exact::{cyclo, Cyclotomic, ExactMatrix, Polynomial};
pub use group::{conjugacy_class, ConjClass, FiniteGroup, Representation};
