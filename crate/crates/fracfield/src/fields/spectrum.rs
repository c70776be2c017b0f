//! Power spectra: the per-mode variances C_j of a Gaussian random field.
//!
//! On the sphere the spectrum is per-degree (all 2l+1 orders of a degree
//! share C_l, which is the angular power spectrum); the generic notion
//! used here is per eigenvalue band, so conjugate modes always share a
//! variance and synthesized fields stay real.
//!
//! Two parametric families are provided, both requiring γ > 2 for a
//! square-integrable field:
//!
//! * [`PowerSpectrum::parametric_band`]: C = A (1 + b)^{−γ} with b the
//!   band rank — on the sphere this is exactly C_l = A(1+l)^{−γ};
//! * [`PowerSpectrum::parametric_weyl`]: C = A (1 + j_band)^{−γ} with
//!   j_band the global index of the band's first mode, i.e. the spectrum
//!   decays like (mode index)^{−γ} along the full enumeration, which is
//!   the form entering the high-frequency damping asymptotics.

use crate::error::{Error, Result};
use crate::manifold::{RealityPairing, SpectralBackend};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSpectrum {
    backend_id: String,
    per_mode: Vec<f64>,
    gamma: Option<f64>,
}

impl PowerSpectrum {
    /// Explicit per-mode variances. Conjugate-paired modes must carry the
    /// same variance, otherwise no real field has this spectrum.
    pub fn from_values(backend: &dyn SpectralBackend, values: Vec<f64>) -> Result<Self> {
        if values.len() != backend.num_modes() {
            return Err(Error::parameter(format!(
                "spectrum length {} does not match backend enumeration {}",
                values.len(),
                backend.num_modes()
            )));
        }
        for (j, v) in values.iter().enumerate() {
            if !(*v >= 0.0) {
                return Err(Error::parameter(format!(
                    "negative variance {v} at mode {j}"
                )));
            }
            if let RealityPairing::Partner { index, .. } = backend.reality_pairing(j) {
                if (values[index] - *v).abs() > 1e-12 * (1.0 + v.abs()) {
                    return Err(Error::parameter(format!(
                        "conjugate modes {j} and {index} carry different variances"
                    )));
                }
            }
        }
        Ok(PowerSpectrum {
            backend_id: backend.id(),
            per_mode: values,
            gamma: None,
        })
    }

    /// C = amplitude (1 + band rank)^{−γ}; on the sphere C_l = A(1+l)^{−γ}.
    pub fn parametric_band(
        backend: &dyn SpectralBackend,
        amplitude: f64,
        gamma: f64,
    ) -> Result<Self> {
        Self::parametric(backend, amplitude, gamma, false)
    }

    /// C = amplitude (1 + first mode index of the band)^{−γ}: decay in the
    /// global mode enumeration.
    pub fn parametric_weyl(
        backend: &dyn SpectralBackend,
        amplitude: f64,
        gamma: f64,
    ) -> Result<Self> {
        Self::parametric(backend, amplitude, gamma, true)
    }

    fn parametric(
        backend: &dyn SpectralBackend,
        amplitude: f64,
        gamma: f64,
        weyl: bool,
    ) -> Result<Self> {
        if !(amplitude >= 0.0) {
            return Err(Error::parameter("spectrum amplitude must be >= 0"));
        }
        if !(gamma > 2.0) {
            return Err(Error::parameter(format!(
                "spectral decay gamma must exceed 2 for a square-integrable field, got {gamma}"
            )));
        }
        let per_mode = (0..backend.num_modes())
            .map(|j| {
                let b = if weyl {
                    backend.band_start(j)
                } else {
                    backend.band_rank(j)
                };
                amplitude * (1.0 + b as f64).powf(-gamma)
            })
            .collect();
        Ok(PowerSpectrum {
            backend_id: backend.id(),
            per_mode,
            gamma: Some(gamma),
        })
    }

    pub fn backend_id(&self) -> &str {
        &self.backend_id
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn values(&self) -> &[f64] {
        &self.per_mode
    }

    pub fn value(&self, j: usize) -> f64 {
        self.per_mode[j]
    }

    pub fn len(&self) -> usize {
        self.per_mode.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_mode.is_empty()
    }

    /// E ∫ T² dμ = Σ_j C_j (each mode counted once in the enumeration).
    pub fn total_variance(&self) -> f64 {
        self.per_mode.iter().sum()
    }

    pub fn ensure_matches(&self, backend: &dyn SpectralBackend) -> Result<()> {
        if self.backend_id != backend.id() {
            return Err(Error::parameter(format!(
                "spectrum built for {}, not {}",
                self.backend_id,
                backend.id()
            )));
        }
        Ok(())
    }
}
