//! Sobolev regularity check for the strong-solution hypothesis of the
//! time-fractional problem: initial data must lie in H^s with
//! s > (3 + 3n)/4 for the eigenfunction expansion to converge strongly.

use crate::error::Result;
use crate::manifold::SpectralBackend;

use super::coefficients::SpectralCoefficients;

/// The strong-solution exponent threshold (3 + 3n)/4.
pub fn strong_solution_threshold(dim: usize) -> f64 {
    (3.0 + 3.0 * dim as f64) / 4.0
}

/// Outcome of the H^s membership check at truncation.
#[derive(Debug, Clone)]
pub struct SobolevCheck {
    pub s: f64,
    pub n: usize,
    /// Partial sum Σ_j λ_j^{2s} |κ_j|² over the truncation.
    pub sum: f64,
    /// Whether the partial sums look convergent (the top eigenvalue
    /// quintile carries a negligible share).
    pub tail_converged: bool,
    /// s exceeds (3+3n)/4 and the sum looks finite.
    pub passes: bool,
}

/// Evaluate Σ λ^{2s}|κ|² with a convergence heuristic on the truncated
/// tail: band-limited data always converges, and data whose top-quintile
/// contribution stays above 1% of the total is flagged divergent.
pub fn sobolev_check(
    backend: &dyn SpectralBackend,
    coeffs: &SpectralCoefficients,
    s: f64,
) -> Result<SobolevCheck> {
    coeffs.ensure_matches(backend)?;
    let n = backend.dim();
    let weighted: Vec<f64> = coeffs
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let lam = backend.eigenvalue(j);
            if lam == 0.0 {
                0.0
            } else {
                lam.powf(2.0 * s) * v.norm_sqr()
            }
        })
        .collect();
    let sum: f64 = weighted.iter().sum();
    let split = weighted.len() - weighted.len() / 5;
    let tail: f64 = weighted[split..].iter().sum();
    let tail_converged = sum == 0.0 || tail <= 0.01 * sum;
    let passes = s > strong_solution_threshold(n) && tail_converged;
    Ok(SobolevCheck {
        s,
        n,
        sum,
        tail_converged,
        passes,
    })
}
