//! Special functions shared by every other module: Mittag-Leffler on the
//! negative axis, Legendre and spherical harmonics, Gauss quadrature, and
//! the L1 Caputo-derivative oracle.
//!
//! Everything here is pure and deterministic; tolerances are explicit
//! parameters (series default 1e-10, quadrature oracles 1e-8).

pub mod caputo;
pub mod gamma;
pub mod legendre;
pub mod mittag_leffler;
pub mod quadrature;
pub mod spherical;

pub use caputo::caputo_l1_derivative;
pub use legendre::{legendre_all, legendre_poly};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler_eval, mittag_leffler_integral_oracle, MittagLefflerEval,
    MlMethod, DEFAULT_TOL,
};
pub use spherical::{
    assoc_legendre, mode_index, spherical_harmonic, spherical_harmonics_all, SphericalHarmonicIndex,
};
