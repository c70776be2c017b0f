//! L1 quadrature of the Caputo fractional derivative on a uniform grid.
//!
//! D^β u(t_n) ≈ Δt^{−β}/Γ(2−β) Σ_{k=0}^{n−1} w_k (u_{n−k} − u_{n−k−1}),
//! w_k = (k+1)^{1−β} − k^{1−β}.
//!
//! This is a test oracle for the fractional-in-time solvers, not a solver
//! itself: for smooth u the error is O(Δt^{2−β}); for the Mittag-Leffler
//! relaxation profiles (whose derivative blows up like t^{β−1} at zero)
//! the first cell contributes an extra O(Δt^{1+β}) term, so the observed
//! order at fixed t is min(2−β, 1+β).

use crate::error::{Error, Result};
use crate::specfun::gamma::gamma;

/// Caputo derivative of order `beta` at grid index `t_index`, from samples
/// u(0), u(Δt), ... on the uniform grid with spacing `dt`.
pub fn caputo_l1_derivative(samples: &[f64], dt: f64, beta: f64, t_index: usize) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::parameter("caputo_l1: need at least 2 samples"));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::parameter(format!(
            "caputo_l1: beta must be in (0,1), got {beta}"
        )));
    }
    if !(dt > 0.0) {
        return Err(Error::parameter("caputo_l1: dt must be positive"));
    }
    if t_index == 0 || t_index >= samples.len() {
        return Err(Error::parameter(format!(
            "caputo_l1: t_index must be in 1..{}, got {t_index}",
            samples.len()
        )));
    }
    let n = t_index;
    let mut acc = 0.0;
    for k in 0..n {
        let w = ((k + 1) as f64).powf(1.0 - beta) - (k as f64).powf(1.0 - beta);
        acc += w * (samples[n - k] - samples[n - k - 1]);
    }
    Ok(acc * dt.powf(-beta) / gamma(2.0 - beta))
}
