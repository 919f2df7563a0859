//! Exact computations with osculating spaces of polynomial maps: jets and
//! their ranks, differential equations satisfied by linear systems,
//! inflection of rational curves, Chern classes of principal parts on
//! `P^n`, and numerical checks of degeneracy statements.

pub mod algebra;
pub mod catalog;
pub mod checks;
pub mod chow;
pub mod equation;
pub mod error;
pub mod inflection;
pub mod jet;
pub mod report;

pub use algebra::{MPoly, Monomial, Rat};
pub use error::{Error, Result};
pub use jet::{MultiIndex, PolyMap};
pub use report::{HypothesisReport, Verdict};
