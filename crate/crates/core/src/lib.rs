//! Probabilistic tape diagrams over a pluggable base category, compiled to
//! matrices of exact subdistributions.
//!
//! [`tape::TapeTerm`] is the term language, [`stmat::StochMatrix`] the target
//! of compilation, and [`boolcirc`] the probabilistic Boolean circuit instance
//! with its decision procedure for semantic equivalence.

pub mod base;
pub mod boolcirc;
pub mod dsl;
pub mod error;
pub mod json;
pub mod laws;
pub mod prob;
pub mod random;
pub mod stmat;
pub mod tape;
