//! Spectral machinery for fractional Cauchy problems on compact manifolds
//! and for Gaussian random fields evolved or coordinate-changed by
//! subordinated Brownian motion.
//!
//! The library is organized around a small set of closed-form spectral
//! backends (the unit sphere, flat tori, a Dirichlet interval) exposing
//! eigenpairs of the Laplace-Beltrami operator. On top of those sit
//!
//! * [`specfun`] — Mittag-Leffler, Legendre/spherical-harmonic and Caputo
//!   quadrature primitives,
//! * [`subordinate`] — Laplace exponents and exact samplers for
//!   subordinators and the inverse stable subordinator,
//! * [`manifold`] — the spectral backends, heat kernels and Brownian
//!   transition samplers,
//! * [`solver`] — deterministic solvers for the heat, time-fractional and
//!   space-fractional problems plus Monte Carlo stochastic-representation
//!   cross-checks,
//! * [`fields`] — Karhunen-Loève synthesis, evolved spectra and
//!   coordinate-changed field sampling,
//! * [`validate`] — runnable invariant suites used by the CLI.
//!
//! Every sampler takes an explicit [`rng::RngState`]; identical seeds and
//! stream ids reproduce identical draws.

pub mod error;
pub mod fields;
pub mod manifold;
pub mod rng;
pub mod solver;
pub mod specfun;
pub mod subordinate;
pub mod validate;

pub use error::{Error, Result};
pub use rng::RngState;
