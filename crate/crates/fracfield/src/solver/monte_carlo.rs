//! Monte Carlo cross-checks through the stochastic representations:
//!
//! * heat:             u(m,t) = E f(B^m_t)
//! * time-fractional:  u(m,t) = E f(B^m_{E_t}),  E_t inverse stable
//! * space-fractional: u(m,t) = E f(B^m_{S_t}),  S_t the Ψ-subordinator
//!
//! On the closed backends the endpoint is drawn in a single exact
//! transition of the (random) duration; killed interval paths are stepped
//! at the configured resolution and contribute zero after absorption.
//! Paths are distributed over fixed-size chunks with per-chunk RNG
//! substreams and merged in chunk order, so estimates are reproducible
//! under any thread schedule.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::manifold::{ManifoldPoint, SpectralBackend};
use crate::rng::RngState;
use crate::subordinate::{sample_inverse_stable, sample_subordinator};

use super::coefficients::SpectralCoefficients;
use super::spectral::Problem;

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n: usize,
}

impl McEstimate {
    /// |mean − reference| in units of the standard error.
    pub fn sigmas_from(&self, reference: f64) -> f64 {
        if self.std_error == 0.0 {
            if (self.mean - reference).abs() < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.mean - reference).abs() / self.std_error
        }
    }
}

const CHUNKS: usize = 64;

/// Estimate u(probe, t) = E f(B_τ) by `paths` simulated excursions, with f
/// given through its projection coefficients. `steps_per_unit` controls the
/// killed-path resolution on the interval backend (closed backends use one
/// exact transition per path).
pub fn stochastic_representation(
    backend: &dyn SpectralBackend,
    init: &SpectralCoefficients,
    problem: &Problem,
    probe: &ManifoldPoint,
    t: f64,
    paths: usize,
    steps_per_unit: usize,
    rng: &RngState,
) -> Result<McEstimate> {
    init.ensure_matches(backend)?;
    if !(t > 0.0) {
        return Err(Error::parameter(
            "stochastic_representation: t must be positive",
        ));
    }
    if paths == 0 || steps_per_unit == 0 {
        return Err(Error::parameter(
            "stochastic_representation: paths and steps must be positive",
        ));
    }
    if !backend.contains(probe) {
        return Err(Error::parameter(
            "probe point does not belong to the backend",
        ));
    }
    if let Problem::TimeFractional { beta } = problem {
        if !(*beta > 0.0 && *beta <= 1.0) {
            return Err(Error::parameter("beta must be in (0,1]"));
        }
    }
    let chunks = CHUNKS.min(paths);
    let base = paths / chunks;
    let extra = paths % chunks;
    let partials: Vec<Result<(f64, f64, usize)>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let n_c = base + usize::from(c < extra);
            let mut rng_c = rng.substream(c as u64);
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..n_c {
                let v = one_path(backend, init, problem, probe, t, steps_per_unit, &mut rng_c)?;
                sum += v;
                sumsq += v * v;
            }
            Ok((sum, sumsq, n_c))
        })
        .collect();
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    let mut n = 0usize;
    for p in partials {
        let (s, sq, k) = p?;
        sum += s;
        sumsq += sq;
        n += k;
    }
    let mean = sum / n as f64;
    let var = (sumsq / n as f64 - mean * mean).max(0.0);
    Ok(McEstimate {
        mean,
        std_error: (var / n as f64).sqrt(),
        n,
    })
}

fn one_path(
    backend: &dyn SpectralBackend,
    init: &SpectralCoefficients,
    problem: &Problem,
    probe: &ManifoldPoint,
    t: f64,
    steps_per_unit: usize,
    rng: &mut RngState,
) -> Result<f64> {
    let tau = match problem {
        Problem::Heat => t,
        Problem::TimeFractional { beta } => {
            if *beta == 1.0 {
                t
            } else {
                sample_inverse_stable(*beta, t, rng)?
            }
        }
        Problem::SpaceFractional { psi } => sample_subordinator(psi, t, rng)?,
    };
    if tau == 0.0 {
        return Ok(init.evaluate(backend, probe)?.re);
    }
    if backend.is_closed() {
        let tr = backend.sample_transition(probe, tau, rng)?;
        return Ok(init.evaluate(backend, &tr.point)?.re);
    }
    // killed path, stepped
    let steps = ((tau * steps_per_unit as f64).ceil() as usize).max(1);
    let dt = tau / steps as f64;
    let mut point = *probe;
    for _ in 0..steps {
        let tr = backend.sample_transition(&point, dt, rng)?;
        if !tr.alive {
            return Ok(0.0);
        }
        point = tr.point;
    }
    Ok(init.evaluate(backend, &point)?.re)
}
