//! Shared numerical plumbing: quadrature, deterministic summation, fits.

pub mod fit;
pub mod quadrature;
pub mod sum;
