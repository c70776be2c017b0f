//! Time evolution of random fields: the initial-condition field's
//! coefficients are damped by the deterministic mode multipliers
//! e^{−tΨ(λ_j)} (subordinate law) or E_β(−t^β λ_j) (time-fractional law).
//! Given the base field this is the conditional expectation of the
//! coordinate-changed field, so it is deterministic here.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::manifold::{ManifoldPoint, SpectralBackend};
use crate::specfun::mittag_leffler::mittag_leffler;
use crate::subordinate::{psi_eval, LaplaceExponent};

use super::synthesis::RandomField;

#[derive(Debug, Clone, PartialEq)]
pub enum EvolutionLaw {
    /// Modes damped by e^{−t Ψ(λ)}.
    Subordinate(LaplaceExponent),
    /// Modes damped by E_β(−t^β λ).
    TimeFractional { beta: f64 },
}

impl EvolutionLaw {
    pub fn validate(&self) -> Result<()> {
        match self {
            EvolutionLaw::Subordinate(psi) => psi.validate(),
            EvolutionLaw::TimeFractional { beta } => {
                if !(*beta > 0.0 && *beta <= 1.0) {
                    return Err(Error::parameter(format!(
                        "beta must be in (0,1], got {beta}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// The mode multiplier at eigenvalue `lambda` and time `t`.
    pub fn factor(&self, lambda: f64, t: f64) -> Result<f64> {
        match self {
            EvolutionLaw::Subordinate(psi) => Ok((-t * psi_eval(psi, lambda)?).exp()),
            EvolutionLaw::TimeFractional { beta } => {
                if *beta == 1.0 {
                    Ok((-t * lambda).exp())
                } else {
                    mittag_leffler(*beta, -t.powf(*beta) * lambda, 1e-12)
                }
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            EvolutionLaw::Subordinate(psi) => format!("subordinate({})", psi.label()),
            EvolutionLaw::TimeFractional { beta } => format!("time_fractional(beta={beta})"),
        }
    }
}

/// A field at time t under an evolution law, keeping the base realization.
#[derive(Debug, Clone)]
pub struct EvolvedField {
    pub base: RandomField,
    pub law: EvolutionLaw,
    pub t: f64,
    coefficients: Vec<Complex64>,
}

impl EvolvedField {
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn evaluate(&self, backend: &dyn SpectralBackend, p: &ManifoldPoint) -> Result<Complex64> {
        let basis = backend.basis_at(p)?;
        Ok(self
            .coefficients
            .iter()
            .zip(&basis)
            .map(|(c, phi)| c * phi)
            .sum())
    }

    /// Energy in the nonconstant modes; the distance to the steady state
    /// c_0 φ_0 in L².
    pub fn nonconstant_energy(&self, backend: &dyn SpectralBackend) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(j, _)| backend.eigenvalue(*j) > 0.0)
            .map(|(_, c)| c.norm_sqr())
            .sum()
    }
}

/// Damp the base field's coefficients by the law's multiplier at time t.
pub fn evolve(
    backend: &dyn SpectralBackend,
    field: &RandomField,
    law: &EvolutionLaw,
    t: f64,
) -> Result<EvolvedField> {
    law.validate()?;
    if !(t >= 0.0) {
        return Err(Error::parameter("evolution time must be >= 0"));
    }
    if field.backend_id() != backend.id() {
        return Err(Error::parameter("field and backend do not match"));
    }
    let mut cache: HashMap<u64, f64> = HashMap::new();
    let coefficients = field
        .coefficients()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let lam = backend.eigenvalue(j);
            let f = match cache.get(&lam.to_bits()) {
                Some(f) => *f,
                None => {
                    let f = law.factor(lam, t)?;
                    cache.insert(lam.to_bits(), f);
                    f
                }
            };
            Ok(c * f)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EvolvedField {
        base: field.clone(),
        law: law.clone(),
        t,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::spectrum::PowerSpectrum;
    use crate::fields::synthesis::synthesize;
    use crate::manifold::Sphere2;
    use crate::rng::RngState;
    use approx::assert_abs_diff_eq;

    fn field_on(s: &Sphere2, seed: u64) -> RandomField {
        let spec = PowerSpectrum::parametric_band(s, 1.0, 3.0).unwrap();
        let mut rng = RngState::from_seed(seed);
        synthesize(s, &spec, &mut rng).unwrap()
    }

    #[test]
    fn zero_time_is_the_identity() {
        let s = Sphere2::new(6).unwrap();
        let f = field_on(&s, 1);
        for law in [
            EvolutionLaw::Subordinate(LaplaceExponent::stable(0.5)),
            EvolutionLaw::TimeFractional { beta: 0.5 },
        ] {
            let e = evolve(&s, &f, &law, 0.0).unwrap();
            for (a, b) in e.coefficients().iter().zip(f.coefficients()) {
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn constant_mode_never_decays() {
        let s = Sphere2::new(6).unwrap();
        let f = field_on(&s, 2);
        for law in [
            EvolutionLaw::Subordinate(LaplaceExponent::geometric_stable(0.4)),
            EvolutionLaw::TimeFractional { beta: 0.7 },
        ] {
            for t in [0.5, 3.0, 50.0] {
                let e = evolve(&s, &f, &law, t).unwrap();
                assert_eq!(e.coefficients()[0], f.coefficients()[0]);
            }
        }
    }

    #[test]
    fn per_mode_damping_is_monotone_in_time() {
        let s = Sphere2::new(6).unwrap();
        let f = field_on(&s, 3);
        for law in [
            EvolutionLaw::Subordinate(LaplaceExponent::stable(0.5)),
            EvolutionLaw::TimeFractional { beta: 0.5 },
        ] {
            let mut prev: Option<Vec<f64>> = None;
            for t in [0.0, 0.3, 1.0, 4.0, 20.0] {
                let e = evolve(&s, &f, &law, t).unwrap();
                let mags: Vec<f64> = e.coefficients().iter().map(|c| c.norm()).collect();
                if let Some(p) = &prev {
                    for (a, b) in p.iter().zip(&mags) {
                        assert!(*b <= a + 1e-14);
                    }
                }
                prev = Some(mags);
            }
        }
    }

    #[test]
    fn long_time_steady_state_is_the_random_constant() {
        let s = Sphere2::new(6).unwrap();
        let f = field_on(&s, 4);
        let e = evolve(
            &s,
            &f,
            &EvolutionLaw::Subordinate(LaplaceExponent::stable(0.5)),
            50.0,
        )
        .unwrap();
        // sup-norm of the nonconstant part is bounded by Σ|c_j|·‖φ_j‖_∞
        let sup: f64 = e
            .coefficients()
            .iter()
            .enumerate()
            .filter(|(j, _)| s.eigenvalue(*j) > 0.0)
            .map(|(j, c)| c.norm() * s.eigenfunction_sup_bound(j))
            .sum();
        assert!(sup < 1e-6, "steady-state distance {sup}");
        assert_abs_diff_eq!(e.coefficients()[0].re, f.coefficients()[0].re);
    }
}
