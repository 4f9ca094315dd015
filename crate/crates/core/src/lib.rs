//! Discrete multivariate quasi-probability distributions for spin-j states.
//!
//! A spin-j density matrix is fully characterized by its spherical tensor
//! parameters, or equivalently by mixed moments of the three spin components
//! under a chosen operator-ordering rule. This crate builds the operator
//! machinery (spin matrices, orthonormal tensor operators, Wigner-Weyl and
//! Margenau-Hill symmetrizers), inverts moment tables into discrete
//! quasi-probability mass functions on the (2j+1)³ grid of projection values,
//! and detects spin squeezing in the canonical mean-spin-direction frame.
//! A small field scenario (quadrupole + Zeeman thermal states) generates
//! physical inputs for squeezing scans.

pub mod angmom;
pub mod correspondence;
pub mod distribution;
pub mod error;
pub mod kernel;
pub mod scenario;
pub mod squeezing;
pub mod states;
pub mod tol;

pub use error::{Error, Result};
pub use kernel::CMatrix;
