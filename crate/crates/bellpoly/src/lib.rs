//! Translationally invariant two-body Bell inequalities.
//!
//! This crate enumerates the translationally invariant (TI) local polytope
//! built from one- and two-body correlators of N parties with two ±1-valued
//! observables each, computes its facets with exact rational arithmetic,
//! groups them into symmetry classes, certifies classical and nonsignalling
//! bounds, and searches for quantum violations with real qubit measurements
//! as well as TI states of higher local dimension via see-saw iteration.

pub mod bounds;
pub mod correlator;
pub mod dd;
pub mod error;
pub mod golden;
pub mod inequality;
pub mod linalg;
pub mod polytope;
pub mod quantum;
pub mod report;
pub mod scalar;
pub mod seesaw;
pub mod simplex;
pub mod strategy;
pub mod symmetry;

pub use error::BellError;
pub use inequality::TIInequality;

/// Exact-arithmetic inequality used by the polytope and bounds machinery.
pub type ExactInequality = TIInequality<num_rational::BigRational>;
/// Floating-point inequality used by the quantum and see-saw modules.
pub type FloatInequality = TIInequality<f64>;

pub type Rational = num_rational::BigRational;
