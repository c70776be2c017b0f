//! Truncated Fourier coefficients against a backend's eigenbasis.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::manifold::{ManifoldPoint, SpectralBackend};

/// κ or c vectors indexed by a backend's mode enumeration. The backend id
/// is carried along so cross-backend mixups fail loudly.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoefficients {
    backend_id: String,
    values: Vec<Complex64>,
}

impl SpectralCoefficients {
    pub fn new(backend_id: String, values: Vec<Complex64>) -> Self {
        SpectralCoefficients { backend_id, values }
    }

    pub fn zero(backend: &dyn SpectralBackend) -> Self {
        SpectralCoefficients {
            backend_id: backend.id(),
            values: vec![Complex64::new(0.0, 0.0); backend.num_modes()],
        }
    }

    /// Unit coefficient on mode `j`.
    pub fn single_mode(backend: &dyn SpectralBackend, j: usize) -> Result<Self> {
        if j >= backend.num_modes() {
            return Err(Error::parameter(format!(
                "mode {j} out of range (backend has {})",
                backend.num_modes()
            )));
        }
        let mut c = Self::zero(backend);
        c.values[j] = Complex64::new(1.0, 0.0);
        Ok(c)
    }

    pub fn backend_id(&self) -> &str {
        &self.backend_id
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn ensure_matches(&self, backend: &dyn SpectralBackend) -> Result<()> {
        if self.backend_id != backend.id() {
            return Err(Error::parameter(format!(
                "coefficients were projected on {}, not {}",
                self.backend_id,
                backend.id()
            )));
        }
        if self.values.len() != backend.num_modes() {
            return Err(Error::parameter(format!(
                "coefficient length {} does not match backend enumeration {}",
                self.values.len(),
                backend.num_modes()
            )));
        }
        Ok(())
    }

    /// Σ_j v_j φ_j(p).
    pub fn evaluate(&self, backend: &dyn SpectralBackend, p: &ManifoldPoint) -> Result<Complex64> {
        self.ensure_matches(backend)?;
        let basis = backend.basis_at(p)?;
        Ok(self.values.iter().zip(&basis).map(|(v, phi)| v * phi).sum())
    }

    /// L²(μ) norm of the represented function (Parseval).
    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Energy carried by modes with positive eigenvalue.
    pub fn nonconstant_energy(&self, backend: &dyn SpectralBackend) -> Result<f64> {
        self.ensure_matches(backend)?;
        Ok(self
            .values
            .iter()
            .enumerate()
            .filter(|(j, _)| backend.eigenvalue(*j) > 0.0)
            .map(|(_, v)| v.norm_sqr())
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{project, Sphere2};
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_projects_onto_the_zero_mode() {
        let s = Sphere2::new(6).unwrap();
        let c = project(&s, &|_| 2.5).unwrap();
        // κ_0 = 2.5·√(4π), everything else ~ 0
        assert_abs_diff_eq!(
            c.values()[0].re,
            2.5 * (4.0 * std::f64::consts::PI).sqrt(),
            epsilon = 1e-10
        );
        for v in &c.values()[1..] {
            assert!(v.norm() < 1e-10);
        }
    }

    #[test]
    fn eigenfunction_projects_onto_itself() {
        let s = Sphere2::new(6).unwrap();
        // f = Y_21 (real part representation goes through complex basis)
        let j = crate::specfun::mode_index(2, 1);
        let f = move |p: &ManifoldPoint| {
            let ManifoldPoint::Sphere { theta, phi } = p else {
                unreachable!()
            };
            crate::specfun::spherical_harmonic(2, 1, *theta, *phi)
                .unwrap()
                .re
        };
        let c = project(&s, &f).unwrap();
        // Re Y_21 = (Y_21 + conj(Y_21))/2 = (Y_21 − Y_{2,−1})/2
        assert_abs_diff_eq!(c.values()[j].re, 0.5, epsilon = 1e-10);
        let jm = crate::specfun::mode_index(2, -1);
        assert_abs_diff_eq!(c.values()[jm].re, -0.5, epsilon = 1e-10);
        let rest: f64 = c
            .values()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j && *k != jm)
            .map(|(_, v)| v.norm_sqr())
            .sum();
        assert!(rest < 1e-18);
    }

    #[test]
    fn cos_theta_is_a_pure_degree_one_band() {
        let s = Sphere2::new(6).unwrap();
        let c = project(&s, &|p| {
            let ManifoldPoint::Sphere { theta, .. } = p else {
                unreachable!()
            };
            theta.cos()
        })
        .unwrap();
        // cos θ = √(4π/3) Y_10
        let j = crate::specfun::mode_index(1, 0);
        assert_abs_diff_eq!(c.values()[j].re, 2.046_653_415_892_977, epsilon = 1e-11);
        for (k, v) in c.values().iter().enumerate() {
            if k != j {
                assert!(v.norm() < 1e-10, "leakage at mode {k}: {v}");
            }
        }
    }

    #[test]
    fn reconstruct_then_project_is_identity_for_band_limited() {
        let s = Sphere2::new(5).unwrap();
        let mut orig = SpectralCoefficients::zero(&s);
        orig.values_mut()[crate::specfun::mode_index(1, 0)] = Complex64::new(0.7, 0.0);
        orig.values_mut()[crate::specfun::mode_index(3, 2)] = Complex64::new(0.2, 0.1);
        orig.values_mut()[crate::specfun::mode_index(3, -2)] = Complex64::new(0.2, -0.1);
        let f = {
            let orig = orig.clone();
            let sref = Sphere2::new(5).unwrap();
            move |p: &ManifoldPoint| orig.evaluate(&sref, p).unwrap().re
        };
        let back = project(&s, &f).unwrap();
        for (a, b) in orig.values().iter().zip(back.values()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-10);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-10);
        }
    }

    #[test]
    fn backend_mismatch_is_rejected() {
        let s5 = Sphere2::new(5).unwrap();
        let s6 = Sphere2::new(6).unwrap();
        let c = SpectralCoefficients::zero(&s5);
        assert!(c.ensure_matches(&s6).is_err());
    }
}
