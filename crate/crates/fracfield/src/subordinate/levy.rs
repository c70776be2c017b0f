//! Quadrature of the Lévy integral Ψ(ξ) = ∫_0^∞ (1 − e^{−sξ}) ν(ds) for the
//! kinds with a listed density:
//!
//! * stable:           ν(ds) = α s^{−α−1} / Γ(1−α) ds
//! * gamma:            ν(ds) = s^{−1} e^{−s} ds
//! * geometric stable: ν(ds) = α s^{−1} E_α(−s^α) ds
//!
//! The geometric-stable density is pinned by the closed form: differentiating
//! ∫ (1 − e^{−sξ}) ν(ds) = ln(1 + ξ^α) in ξ gives the Laplace transform
//! α ξ^{α−1}/(1 + ξ^α) = α L[E_α(−s^α)](ξ).
//!
//! Cross-check for the closed forms of [`psi_eval`](super::psi_eval). The
//! substitution s = e^y turns every integrand into a smooth function with
//! exponential decay on both ends, handled by a composite Gauss rule.

use crate::error::{Error, Result};
use crate::specfun::gamma::gamma;
use crate::specfun::mittag_leffler::mittag_leffler;
use crate::specfun::quadrature::gauss_legendre_on;

use super::exponent::LaplaceExponent;

/// s·ν(s) at s = e^y, i.e. the integrand density after the log substitution.
fn log_density(spec: &LaplaceExponent, s: f64) -> Result<f64> {
    match spec {
        LaplaceExponent::Stable { alpha } if *alpha < 1.0 => {
            Ok(alpha * s.powf(-alpha) / gamma(1.0 - alpha))
        }
        LaplaceExponent::Gamma => Ok((-s).exp()),
        LaplaceExponent::GeometricStable { alpha } => {
            Ok(alpha * mittag_leffler(*alpha, -s.powf(*alpha), 1e-12)?)
        }
        other => Err(Error::unsupported(format!(
            "no Lévy density for {}; only stable, gamma and geometric stable carry one",
            other.label()
        ))),
    }
}

/// Integration window in y = ln s such that the omitted tails are below
/// ~1e-14 of the result scale.
fn log_window(spec: &LaplaceExponent, xi: f64) -> Result<(f64, f64)> {
    // left tail: integrand ~ ξ e^y · (s ν(s)) |_{s=e^y}
    let lo = match spec {
        LaplaceExponent::Stable { alpha } => (-34.0 - (xi.max(1.0)).ln()) / (1.0 - alpha),
        LaplaceExponent::Gamma => -34.0 - (xi.max(1.0)).ln(),
        LaplaceExponent::GeometricStable { .. } => -34.0 - (xi.max(1.0)).ln(),
        other => return Err(Error::unsupported(other.label())),
    };
    // right tail: stable/geometric densities decay like e^{−αy}, gamma like e^{−e^y}
    let hi = match spec {
        LaplaceExponent::Stable { alpha } | LaplaceExponent::GeometricStable { alpha } => {
            34.0 / alpha
        }
        LaplaceExponent::Gamma => 3.6,
        other => return Err(Error::unsupported(other.label())),
    };
    Ok((lo, hi))
}

/// Ψ(ξ) by quadrature of the Lévy integral using roughly `n_nodes` Gauss
/// nodes. Supported for the densities listed above; ξ = 0 returns 0 exactly.
pub fn psi_from_levy_quadrature(spec: &LaplaceExponent, xi: f64, n_nodes: usize) -> Result<f64> {
    spec.validate()?;
    if !(xi >= 0.0) {
        return Err(Error::parameter(format!("xi must be >= 0, got {xi}")));
    }
    if n_nodes < 32 {
        return Err(Error::parameter(
            "psi_from_levy_quadrature: need at least 32 nodes",
        ));
    }
    if let LaplaceExponent::Stable { alpha } = spec {
        if *alpha >= 1.0 {
            return Err(Error::unsupported(
                "the elementary subordinator (alpha = 1) is pure drift and has no Lévy density",
            ));
        }
    }
    if xi == 0.0 {
        log_density(spec, 1.0)?; // still reject unsupported kinds
        return Ok(0.0);
    }
    let (lo, hi) = log_window(spec, xi)?;
    let panels = (n_nodes / 16).max(4);
    let width = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let a = lo + p as f64 * width;
        let (ys, ws) = gauss_legendre_on(16, a, a + width);
        for (y, w) in ys.iter().zip(&ws) {
            let s = y.exp();
            let jump = -(-s * xi).exp_m1(); // 1 − e^{−sξ}, accurate for small sξ
            total += w * jump * log_density(spec, s)?;
        }
    }
    Ok(total)
}
