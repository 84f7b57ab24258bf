//! Exact-arithmetic toolkit for theta-hyperplane configurations of nodal
//! canonical curves.
//!
//! The library computes the closed-form counts of theta-hyperplanes by type
//! for irreducible nodal, split, and cuspidal canonical curves, synthesizes
//! concrete weighted hyperplane configurations with the correct incidence
//! structure, and solves the inverse problem of recovering the curve's
//! singular points from a weighted configuration alone. All projective
//! geometry is exact over the rationals; floating point appears only in the
//! conic solvers, where every numeric output carries a residual certificate.

pub mod cli;
pub mod configuration;
pub mod curves;
pub mod document;
pub mod enumeration;
pub mod error;
pub mod exactlin;
pub mod poly;
pub mod recovery;

pub use error::{Error, Result};
pub use exactlin::{Hyperplane, LinSubspace, ProjPoint, Scalar};
