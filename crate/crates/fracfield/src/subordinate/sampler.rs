//! Exact samplers for subordinators and the inverse stable subordinator.
//!
//! One-sided stable draws use the Kanter / Chambers-Mallows-Stuck
//! transformation (one uniform + one exponential, rejection-free), scaled
//! by self-similarity S_t =_d t^{1/α} S_1. Inverse stable marginals use the
//! identity E_t =_d (t / S_1)^β. Joint (path) simulation of the inverse is
//! done by discretized first passage of a stable path and is the only
//! approximate sampler here; its grid step is a caller-chosen parameter.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rng::RngState;

use super::exponent::LaplaceExponent;

/// One-sided α-stable draw with E exp(−s X) = exp(−s^α); α = 1 degenerates
/// to the constant 1.
pub fn sample_one_sided_stable_unit(alpha: f64, rng: &mut RngState) -> f64 {
    debug_assert!(alpha > 0.0 && alpha <= 1.0);
    if alpha == 1.0 {
        return 1.0;
    }
    let u = rng.uniform_open() * PI;
    let w = rng.exponential().max(f64::MIN_POSITIVE);
    let s1 = (alpha * u).sin() / u.sin().powf(1.0 / alpha);
    let s2 = (((1.0 - alpha) * u).sin() / w).powf((1.0 - alpha) / alpha);
    s1 * s2
}

/// S^α_t with E exp(−s S_t) = exp(−t s^α).
pub fn sample_stable(alpha: f64, t: f64, rng: &mut RngState) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::parameter(format!(
            "stable index must be in (0,1], got {alpha}"
        )));
    }
    if !(t > 0.0) {
        return Err(Error::parameter(format!(
            "process time must be positive, got {t}"
        )));
    }
    Ok(t.powf(1.0 / alpha) * sample_one_sided_stable_unit(alpha, rng))
}

/// E^β_t = inf{τ : S^β_τ > t}, drawn through (t / S_1)^β; exact marginal.
pub fn sample_inverse_stable(beta: f64, t: f64, rng: &mut RngState) -> Result<f64> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::parameter(format!(
            "inverse stable index must be in (0,1), got {beta}"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::parameter(format!("time must be >= 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let s1 = sample_one_sided_stable_unit(beta, rng);
    Ok((t / s1).powf(beta))
}

/// S^Ψ_t for any shipped Laplace exponent.
pub fn sample_subordinator(spec: &LaplaceExponent, t: f64, rng: &mut RngState) -> Result<f64> {
    spec.validate()?;
    if !(t > 0.0) {
        return Err(Error::parameter(format!(
            "process time must be positive, got {t}"
        )));
    }
    Ok(draw(spec, t, rng))
}

fn draw(spec: &LaplaceExponent, t: f64, rng: &mut RngState) -> f64 {
    match spec {
        LaplaceExponent::Stable { alpha } => {
            t.powf(1.0 / alpha) * sample_one_sided_stable_unit(*alpha, rng)
        }
        LaplaceExponent::StableWithDrift { drift, alpha } => {
            // same draw stream as the driftless stable, shifted by b t
            t.powf(1.0 / alpha) * sample_one_sided_stable_unit(*alpha, rng) + drift * t
        }
        LaplaceExponent::Gamma => rng.gamma(t),
        LaplaceExponent::GeometricStable { alpha } => {
            // stable subordinator run to an independent Gamma(t, 1) time
            let g = rng.gamma(t);
            g.powf(1.0 / alpha) * sample_one_sided_stable_unit(*alpha, rng)
        }
        LaplaceExponent::Sum { components } => components
            .iter()
            .filter(|c| c.weight > 0.0)
            .map(|c| draw(&c.psi, c.weight * t, rng))
            .sum(),
    }
}

/// Path of S^Ψ on the uniform grid 0, t/steps, ..., t; (time, value) pairs,
/// nondecreasing, S_0 = 0. Increments are exact in distribution.
pub fn sample_subordinator_path(
    spec: &LaplaceExponent,
    t: f64,
    steps: usize,
    rng: &mut RngState,
) -> Result<Vec<(f64, f64)>> {
    spec.validate()?;
    if !(t > 0.0) {
        return Err(Error::parameter("path horizon must be positive"));
    }
    if steps == 0 {
        return Err(Error::parameter("need at least one path step"));
    }
    let dt = t / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut level = 0.0;
    out.push((0.0, 0.0));
    for k in 1..=steps {
        level += draw(spec, dt, rng);
        out.push((k as f64 * dt, level));
    }
    Ok(out)
}

/// First-passage draw of E^β_t from a discretized stable path: the grid step
/// in operational time is t^β / resolution, and the crossing instant is
/// linearly interpolated inside the crossing step.
pub fn sample_inverse_stable_first_passage(
    beta: f64,
    t: f64,
    resolution: usize,
    rng: &mut RngState,
) -> Result<FirstPassage> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::parameter(format!(
            "inverse stable index must be in (0,1), got {beta}"
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::parameter("time must be >= 0"));
    }
    if resolution == 0 {
        return Err(Error::parameter("resolution must be >= 1"));
    }
    if t == 0.0 {
        return Ok(FirstPassage {
            value: 0.0,
            path: vec![(0.0, 0.0)],
        });
    }
    let d_tau = t.powf(beta) / resolution as f64;
    let incr_scale = d_tau.powf(1.0 / beta);
    let record_stride = (resolution / 64).max(1);
    let mut path = vec![(0.0, 0.0)];
    let mut s = 0.0;
    let mut tau = 0.0;
    for k in 1..=(50_000_000 / resolution.max(1)).max(10) * resolution {
        let s_next = s + incr_scale * sample_one_sided_stable_unit(beta, rng);
        let tau_next = k as f64 * d_tau;
        if s_next > t {
            let frac = ((t - s) / (s_next - s)).clamp(0.0, 1.0);
            let crossing = tau + frac * d_tau;
            path.push((crossing, t));
            return Ok(FirstPassage {
                value: crossing,
                path,
            });
        }
        if k % record_stride == 0 {
            path.push((tau_next, s_next));
        }
        s = s_next;
        tau = tau_next;
    }
    Err(Error::numerical(
        "first passage not reached within step budget",
        tau,
    ))
}

/// Result of a first-passage simulation: the crossing time and a coarse
/// record of the simulated subordinator path (time, level).
#[derive(Debug, Clone)]
pub struct FirstPassage {
    pub value: f64,
    pub path: Vec<(f64, f64)>,
}
