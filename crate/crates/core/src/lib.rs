//! Numerical laboratory for the elastic-energy isoperimetric inequality
//! `E²·A >= π³` over bounded simply connected planar domains.
//!
//! The crate builds every object the argument relies on: the first-integral
//! quartic of the penalized elastica, singularity-free period integrals, the
//! unique optimal drop, closed multi-period critical curves with their
//! surgeries, a direct minimizer of `E + A`, and a batch harness checking the
//! inequality over shape families.

pub mod cli;
pub mod critical;
pub mod curvegeom;
pub mod drop;
pub mod elastica;
pub mod error;
pub mod harness;
pub mod io;
pub mod minimize;
pub mod quadrature;
pub mod quartic;

pub use error::{Error, Result};
