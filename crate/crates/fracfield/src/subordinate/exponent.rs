//! Laplace exponents Ψ of the shipped subordinator families.
//!
//! Ψ characterizes a subordinator S through E exp(−ξ S_t) = exp(−t Ψ(ξ));
//! every shipped Ψ is a Bernstein function with Ψ(0) = 0. `alpha = 1` is
//! admitted for `Stable` as the elementary subordinator S_t = t, which is
//! the exact pure-drift degeneration used by the solver tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LaplaceExponent {
    /// Ψ(ξ) = ξ^α, α ∈ (0, 1]; α = 1 is the elementary subordinator.
    Stable { alpha: f64 },
    /// Ψ(ξ) = b ξ + ξ^α with drift b > 0.
    StableWithDrift { drift: f64, alpha: f64 },
    /// Ψ(ξ) = ln(1 + ξ).
    Gamma,
    /// Ψ(ξ) = ln(1 + ξ^α), α ∈ (0, 1).
    GeometricStable { alpha: f64 },
    /// Time-weighted sum: Ψ(ξ) = Σ w_i Ψ_i(ξ), sampled as independent
    /// component subordinators run to times w_i t.
    Sum { components: Vec<WeightedExponent> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedExponent {
    pub weight: f64,
    pub psi: LaplaceExponent,
}

impl LaplaceExponent {
    pub fn stable(alpha: f64) -> Self {
        LaplaceExponent::Stable { alpha }
    }

    pub fn geometric_stable(alpha: f64) -> Self {
        LaplaceExponent::GeometricStable { alpha }
    }

    /// Ψ(ξ) = b ξ, built from the elementary subordinator.
    pub fn pure_drift(b: f64) -> Self {
        LaplaceExponent::Sum {
            components: vec![WeightedExponent {
                weight: b,
                psi: LaplaceExponent::Stable { alpha: 1.0 },
            }],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LaplaceExponent::Stable { alpha } => {
                if !(*alpha > 0.0 && *alpha <= 1.0) {
                    return Err(Error::parameter(format!(
                        "stable index must be in (0,1], got {alpha}"
                    )));
                }
            }
            LaplaceExponent::StableWithDrift { drift, alpha } => {
                if !(*drift > 0.0) {
                    return Err(Error::parameter(format!(
                        "drift must be positive, got {drift}"
                    )));
                }
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::parameter(format!(
                        "stable index must be in (0,1), got {alpha}"
                    )));
                }
            }
            LaplaceExponent::Gamma => {}
            LaplaceExponent::GeometricStable { alpha } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::parameter(format!(
                        "geometric stable index must be in (0,1), got {alpha}"
                    )));
                }
            }
            LaplaceExponent::Sum { components } => {
                if components.is_empty() {
                    return Err(Error::parameter(
                        "sum exponent needs at least one component",
                    ));
                }
                for c in components {
                    if !(c.weight >= 0.0) {
                        return Err(Error::parameter(format!(
                            "sum weights must be >= 0, got {}",
                            c.weight
                        )));
                    }
                    if matches!(c.psi, LaplaceExponent::Sum { .. }) {
                        return Err(Error::parameter("sum exponents do not nest"));
                    }
                    c.psi.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Short display form used in backend ids / CSV headers.
    pub fn label(&self) -> String {
        match self {
            LaplaceExponent::Stable { alpha } => format!("stable({alpha})"),
            LaplaceExponent::StableWithDrift { drift, alpha } => {
                format!("stable_drift(b={drift},{alpha})")
            }
            LaplaceExponent::Gamma => "gamma".to_string(),
            LaplaceExponent::GeometricStable { alpha } => format!("geometric_stable({alpha})"),
            LaplaceExponent::Sum { components } => {
                let parts: Vec<String> = components
                    .iter()
                    .map(|c| format!("{}*{}", c.weight, c.psi.label()))
                    .collect();
                format!("sum[{}]", parts.join("+"))
            }
        }
    }
}

/// Ψ(ξ) in closed form.
pub fn psi_eval(spec: &LaplaceExponent, xi: f64) -> Result<f64> {
    spec.validate()?;
    if !(xi >= 0.0) {
        return Err(Error::parameter(format!(
            "psi_eval: xi must be >= 0, got {xi}"
        )));
    }
    Ok(psi_eval_unchecked(spec, xi))
}

pub(crate) fn psi_eval_unchecked(spec: &LaplaceExponent, xi: f64) -> f64 {
    match spec {
        LaplaceExponent::Stable { alpha } => xi.powf(*alpha),
        LaplaceExponent::StableWithDrift { drift, alpha } => drift * xi + xi.powf(*alpha),
        LaplaceExponent::Gamma => xi.ln_1p(),
        LaplaceExponent::GeometricStable { alpha } => xi.powf(*alpha).ln_1p(),
        LaplaceExponent::Sum { components } => components
            .iter()
            .map(|c| c.weight * psi_eval_unchecked(&c.psi, xi))
            .sum(),
    }
}
