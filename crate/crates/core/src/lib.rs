//! Defining equations of Rees algebras of square-free monomial ideals.

pub mod classify;
pub mod demos;
pub mod graph;
pub mod ideal_file;
pub mod monomial;
pub mod oracle;
mod par;
pub mod random;
pub mod reduce;
pub mod rees;
pub mod report;

pub use monomial::{IdealError, Monomial, MonomialError, SquareFreeIdeal, VariableTable};
pub use rees::{IndexSequence, ReesBinomial, RtMonomial, RtPolynomial};
