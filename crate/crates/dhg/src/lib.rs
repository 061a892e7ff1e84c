//! Double hypergeometric Lévy processes and the self-similar Markov
//! processes built from ricocheted stable paths.
//!
//! The crate provides, layer by layer:
//!
//! * [`specfun`] — complex log-gamma, gamma ratios, generalised
//!   hypergeometric series and the Barnes double gamma;
//! * [`doublebeta`] — the gamma-ratio subordinator class: parameter
//!   classification, Laplace exponent, Lévy and potential densities, and the
//!   residue-series representation used as a numeric oracle;
//! * [`dhgprocess`] — two-sided processes assembled from a pair of factors:
//!   characteristic exponent, two-sided Lévy density, Gaussian-component and
//!   lifetime classification;
//! * [`expfunctional`] — Mellin transform of the exponential functional,
//!   its functional-equation validators and inverse-Mellin density recovery;
//! * [`ricochet`] / [`rssmp`] — ricocheted and glued stable processes, their
//!   Wiener-Hopf data, extreme-value laws and matrix exponents;
//! * [`montecarlo`] — a deterministic, data-parallel path simulator serving
//!   as the independent stochastic oracle;
//! * [`selftest`] — the acceptance suite wired both into `cargo test` and
//!   the CLI `selftest` subcommand.
//!
//! With the default `parallel` feature the embarrassingly parallel pieces
//! (path batches, phase scans, inverse-Mellin contours) run on rayon;
//! disabling it yields a dependency-free sequential build with bit-identical
//! outputs.

pub mod dhgprocess;
pub mod doublebeta;
pub mod error;
pub mod exec;
pub mod expfunctional;
pub mod montecarlo;
pub mod ricochet;
pub mod rssmp;
pub mod selftest;
pub mod specfun;
pub mod support;

pub use error::{DhgError, Result};
pub use specfun::SeriesControl;

/// Complex scalar used across the crate.
pub type Complex = num_complex::Complex64;
