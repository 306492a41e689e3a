//! Exact symbolic engine for the boundary terms of noncommutative residues of
//! conformally perturbed Novikov-type operators on manifolds with boundary.
//!
//! The layers build on each other:
//! [`scalars`] (exact arithmetic), [`clifford`] (matrix model of the Clifford
//! actions), [`symbols`] (symbol calculus in boundary normal coordinates),
//! [`integrate`] (residues in the normal covariable and sphere moments) and
//! [`kkw`] (case enumeration, assembly and comparison).
//! [`fixtures`] loads the recorded densities and citations, [`report`] runs a
//! full verification and renders it as text or JSON.

pub mod clifford;
pub mod error;
pub mod fixtures;
pub mod integrate;
pub mod kkw;
pub mod report;
pub mod scalars;
pub mod symbols;

pub use error::{Error, Result};
