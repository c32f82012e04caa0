//! Exact stereographic correspondences between boundary fields and rational
//! points on circles and spheres, Ford horoballs on those spheres, and
//! finite-height estimates of intrinsic Lagrange spectra.

pub mod error;
pub mod exact;
pub mod geometry;
pub mod horospheres;
pub mod spectra;

pub use error::{Error, Result};
