//! Gaussian random fields on spectral backends: Karhunen-Loève synthesis,
//! deterministic time evolution of the random initial condition, and
//! coordinate-changed sampling along time-changed Brownian excursions.

pub mod coordinate_changed;
pub mod estimate;
pub mod evolve;
pub mod kl_mixing;
pub mod spectrum;
pub mod synthesis;

pub use coordinate_changed::{sample_coordinate_changed, CoordinateChangedSample, TimeChange};
pub use estimate::{ensemble_evolved_spectrum, estimate_spectrum, log_log_slope, EmpiricalMode};
pub use evolve::{evolve, EvolutionLaw, EvolvedField};
pub use kl_mixing::KlMixing;
pub use spectrum::PowerSpectrum;
pub use synthesis::{covariance, synthesize, RandomField};
