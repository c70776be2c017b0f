//! Deterministic spectral solvers for the heat, time-fractional and
//! space-fractional Cauchy problems, with Monte Carlo cross-checks of the
//! stochastic representations.

pub mod coefficients;
pub mod monte_carlo;
pub mod residual;
pub mod sobolev;
pub mod spectral;

pub use coefficients::SpectralCoefficients;
pub use monte_carlo::{stochastic_representation, McEstimate};
pub use residual::pde_residual;
pub use sobolev::{sobolev_check, strong_solution_threshold, SobolevCheck};
pub use spectral::{
    apply_generator, frac_space_solve, frac_time_solve, heat_solve, GeneratorOutput, Problem,
    SolutionSnapshot,
};
