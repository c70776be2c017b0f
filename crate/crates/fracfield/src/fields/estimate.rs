//! Empirical spectra of evolved-field ensembles.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::manifold::SpectralBackend;
use crate::rng::RngState;

use super::evolve::{evolve, EvolutionLaw};
use super::spectrum::PowerSpectrum;
use super::synthesis::synthesize;

/// Empirical per-mode second moment with its standard error.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalMode {
    pub mean_sq: f64,
    pub std_error: f64,
}

/// E|c_j|² from independent coefficient draws. Needs at least 10³ draws
/// for the standard errors to mean anything.
pub fn estimate_spectrum(samples: &[Vec<Complex64>]) -> Result<Vec<EmpiricalMode>> {
    if samples.len() < 1000 {
        return Err(Error::parameter(format!(
            "estimate_spectrum: need at least 1000 draws, got {}",
            samples.len()
        )));
    }
    let modes = samples[0].len();
    if samples.iter().any(|s| s.len() != modes) {
        return Err(Error::parameter("inconsistent coefficient lengths"));
    }
    let n = samples.len() as f64;
    let mut out = Vec::with_capacity(modes);
    for j in 0..modes {
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for s in samples {
            let v = s[j].norm_sqr();
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / n;
        let var = (sumsq / n - mean * mean).max(0.0);
        out.push(EmpiricalMode {
            mean_sq: mean,
            std_error: (var / n).sqrt(),
        });
    }
    Ok(out)
}

/// Synthesize-evolve an ensemble and return (empirical spectrum, model
/// spectrum C_j · factor(λ_j, t)²). Realization r uses `rng.substream(r)`,
/// so the ensemble is reproducible and order-independent.
pub fn ensemble_evolved_spectrum(
    backend: &dyn SpectralBackend,
    spectrum: &PowerSpectrum,
    law: &EvolutionLaw,
    t: f64,
    realizations: usize,
    rng: &RngState,
) -> Result<(Vec<EmpiricalMode>, Vec<f64>)> {
    spectrum.ensure_matches(backend)?;
    law.validate()?;
    let samples: Vec<Result<Vec<Complex64>>> = (0..realizations)
        .into_par_iter()
        .map(|r| {
            let mut rng_r = rng.substream(r as u64);
            let field = synthesize(backend, spectrum, &mut rng_r)?;
            let evolved = evolve(backend, &field, law, t)?;
            Ok(evolved.coefficients().to_vec())
        })
        .collect();
    let samples: Vec<Vec<Complex64>> = samples.into_iter().collect::<Result<_>>()?;
    let empirical = estimate_spectrum(&samples)?;
    let model = (0..backend.num_modes())
        .map(|j| {
            let f = law.factor(backend.eigenvalue(j), t)?;
            Ok(spectrum.value(j) * f * f)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((empirical, model))
}

/// Least-squares slope of ln(y) against ln(x).
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::parameter(
            "log_log_slope: need two same-length series",
        ));
    }
    let pairs: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pairs.len() < 2 {
        return Err(Error::parameter(
            "log_log_slope: not enough positive points",
        ));
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Ok(sxy / sxx)
}
