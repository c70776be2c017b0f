//! Karhunen-Loève synthesis of Gaussian random fields on a backend's
//! eigenbasis: independent centered Gaussian coefficients c_j with
//! variance C_j, coupled across conjugate mode pairs so the field is real.
//!
//! On the sphere the coupling is c_{l,−m} = (−1)^m conj(c_{lm}) with the
//! real and imaginary parts of the m > 0 coefficients drawn independently
//! at variance C_l/2 — the unique choice giving a real field with
//! per-order variance C_l. The torus pairs k with −k the same way.

use num_complex::Complex64;

use crate::error::Result;
use crate::manifold::{ManifoldPoint, RealityPairing, SpectralBackend};
use crate::rng::RngState;

use super::spectrum::PowerSpectrum;

/// A synthesized field: coefficients against the backend eigenbasis plus
/// the RNG provenance that reproduces them.
#[derive(Debug, Clone)]
pub struct RandomField {
    backend_id: String,
    coefficients: Vec<Complex64>,
    seed: u64,
    stream: u64,
}

impl RandomField {
    pub fn backend_id(&self) -> &str {
        &self.backend_id
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn seed_provenance(&self) -> (u64, u64) {
        (self.seed, self.stream)
    }

    /// T(p) = Σ_j c_j φ_j(p); imaginary part is round-off only.
    pub fn evaluate(&self, backend: &dyn SpectralBackend, p: &ManifoldPoint) -> Result<Complex64> {
        let basis = backend.basis_at(p)?;
        Ok(self
            .coefficients
            .iter()
            .zip(&basis)
            .map(|(c, phi)| c * phi)
            .sum())
    }
}

/// Draw one field realization. Draws happen in ascending mode order, one
/// standard normal for a self-conjugate mode and a complex pair for each
/// conjugate representative, so realizations are reproducible from the
/// RNG state alone.
pub fn synthesize(
    backend: &dyn SpectralBackend,
    spectrum: &PowerSpectrum,
    rng: &mut RngState,
) -> Result<RandomField> {
    spectrum.ensure_matches(backend)?;
    let n = backend.num_modes();
    let mut coefficients = vec![Complex64::new(0.0, 0.0); n];
    let (seed, stream) = (rng.seed(), rng.stream_id());
    for j in 0..n {
        let c_j = spectrum.value(j);
        match backend.reality_pairing(j) {
            RealityPairing::SelfConjugate => {
                coefficients[j] = Complex64::new(c_j.sqrt() * rng.standard_normal(), 0.0);
            }
            RealityPairing::Partner { index, sign } => {
                if index > j {
                    continue; // drawn when the representative comes up
                }
                let half = (0.5 * c_j).sqrt();
                let z = Complex64::new(half * rng.standard_normal(), half * rng.standard_normal());
                coefficients[j] = z;
                coefficients[index] = z.conj() * sign;
            }
        }
    }
    Ok(RandomField {
        backend_id: backend.id(),
        coefficients,
        seed,
        stream,
    })
}

/// Covariance 𝒦(x, y) = Σ_j C_j φ_j(x) conj(φ_j(y)) of the synthesized
/// family; real by conjugate pairing.
pub fn covariance(
    backend: &dyn SpectralBackend,
    spectrum: &PowerSpectrum,
    x: &ManifoldPoint,
    y: &ManifoldPoint,
) -> Result<f64> {
    spectrum.ensure_matches(backend)?;
    let bx = backend.basis_at(x)?;
    let by = backend.basis_at(y)?;
    let acc: Complex64 = spectrum
        .values()
        .iter()
        .zip(bx.iter().zip(&by))
        .map(|(c, (px, py))| c * px * py.conj())
        .sum();
    Ok(acc.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{Sphere2, Torus};
    use crate::specfun::{legendre_poly, mode_index};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::PI;

    #[test]
    fn zero_spectrum_gives_the_zero_field() {
        let s = Sphere2::new(4).unwrap();
        let spec = PowerSpectrum::from_values(&s, vec![0.0; s.num_modes()]).unwrap();
        let mut rng = RngState::from_seed(1);
        let f = synthesize(&s, &spec, &mut rng).unwrap();
        let p = ManifoldPoint::sphere(1.0, 1.0).unwrap();
        assert_eq!(f.evaluate(&s, &p).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn synthesized_fields_are_real_on_grids() {
        let s = Sphere2::new(8).unwrap();
        let spec = PowerSpectrum::parametric_band(&s, 1.0, 3.0).unwrap();
        let mut rng = RngState::from_seed(3);
        let f = synthesize(&s, &spec, &mut rng).unwrap();
        for (p, _) in s.quadrature().iter().step_by(7) {
            let v = f.evaluate(&s, p).unwrap();
            assert!(v.im.abs() < 1e-10, "imaginary leak {}", v.im);
        }
        let t2 = Torus::new(2, 6).unwrap();
        let spec = PowerSpectrum::parametric_band(&t2, 1.0, 2.5).unwrap();
        let f = synthesize(&t2, &spec, &mut rng).unwrap();
        for (p, _) in t2.quadrature().iter().step_by(13) {
            let v = f.evaluate(&t2, p).unwrap();
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn reality_coupling_on_the_sphere() {
        let s = Sphere2::new(6).unwrap();
        let spec = PowerSpectrum::parametric_band(&s, 1.0, 3.0).unwrap();
        let mut rng = RngState::from_seed(9);
        let f = synthesize(&s, &spec, &mut rng).unwrap();
        for l in 0..=6i64 {
            for m in 1..=l {
                let c = f.coefficients()[mode_index(l, m)];
                let cm = f.coefficients()[mode_index(l, -m)];
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert_abs_diff_eq!(cm.re, sign * c.re, epsilon = 1e-15);
                assert_abs_diff_eq!(cm.im, -sign * c.im, epsilon = 1e-15);
            }
            let c0 = f.coefficients()[mode_index(l, 0)];
            assert_eq!(c0.im, 0.0);
        }
    }

    #[test]
    fn empirical_mode_variances_match_the_spectrum() {
        let s = Sphere2::new(4).unwrap();
        let spec = PowerSpectrum::parametric_band(&s, 1.0, 3.0).unwrap();
        let mut rng = RngState::from_seed(17);
        let n = 10_000;
        let mut acc = vec![0.0; s.num_modes()];
        let mut acc_sq = vec![0.0; s.num_modes()];
        for _ in 0..n {
            let f = synthesize(&s, &spec, &mut rng).unwrap();
            for (j, c) in f.coefficients().iter().enumerate() {
                let v = c.norm_sqr();
                acc[j] += v;
                acc_sq[j] += v * v;
            }
        }
        for j in 0..s.num_modes() {
            let mean = acc[j] / n as f64;
            let se = ((acc_sq[j] / n as f64 - mean * mean).max(0.0) / n as f64).sqrt();
            let want = spec.value(j);
            assert!(
                (mean - want).abs() < 3.5 * se.max(1e-12),
                "mode {j}: {mean} vs {want} (se {se})"
            );
        }
    }

    #[test]
    fn covariance_closed_forms_on_the_sphere() {
        let s = Sphere2::new(6).unwrap();
        // C_l = δ_{l,2}: 𝒦(x,x) = 5/(4π)
        let mut vals = vec![0.0; s.num_modes()];
        for m in -2i64..=2 {
            vals[mode_index(2, m)] = 1.0;
        }
        let spec = PowerSpectrum::from_values(&s, vals).unwrap();
        let x = ManifoldPoint::sphere(0.9, 2.2).unwrap();
        assert_relative_eq!(
            covariance(&s, &spec, &x, &x).unwrap(),
            5.0 / (4.0 * PI),
            max_relative = 1e-12
        );
        // C_l = δ_{l,1}, antipodal points: P_1(−1) = −1 gives −3/(4π)
        let mut vals = vec![0.0; s.num_modes()];
        for m in -1i64..=1 {
            vals[mode_index(1, m)] = 1.0;
        }
        let spec = PowerSpectrum::from_values(&s, vals).unwrap();
        let a = ManifoldPoint::sphere(0.4, 1.0).unwrap();
        let b = ManifoldPoint::sphere(PI - 0.4, 1.0 + PI).unwrap();
        assert_relative_eq!(
            covariance(&s, &spec, &a, &b).unwrap(),
            -3.0 / (4.0 * PI),
            max_relative = 1e-10
        );
    }

    #[test]
    fn covariance_is_the_legendre_series() {
        // 𝒦(x,y) = Σ_l C_l (2l+1)/(4π) P_l(⟨x,y⟩)
        let s = Sphere2::new(8).unwrap();
        let spec = PowerSpectrum::parametric_band(&s, 1.0, 3.0).unwrap();
        let x = ManifoldPoint::sphere(1.3, 0.2).unwrap();
        let y = ManifoldPoint::sphere(0.5, 4.0).unwrap();
        let cosang = crate::manifold::sphere_angle(&x, &y).unwrap().cos();
        let mut want = 0.0;
        for l in 0..=8i64 {
            want += (1.0 + l as f64).powi(-3) * (2.0 * l as f64 + 1.0) / (4.0 * PI)
                * legendre_poly(l, cosang).unwrap();
        }
        assert_relative_eq!(
            covariance(&s, &spec, &x, &y).unwrap(),
            want,
            max_relative = 1e-10
        );
    }

    #[test]
    fn empirical_covariance_matches_analytic() {
        let s = Sphere2::new(4).unwrap();
        let spec = PowerSpectrum::parametric_band(&s, 1.0, 3.0).unwrap();
        let pairs = [
            (
                ManifoldPoint::sphere(0.3, 0.0).unwrap(),
                ManifoldPoint::sphere(0.3, 0.0).unwrap(),
            ),
            (
                ManifoldPoint::sphere(1.0, 1.0).unwrap(),
                ManifoldPoint::sphere(1.4, 2.0).unwrap(),
            ),
            (
                ManifoldPoint::sphere(2.8, 5.5).unwrap(),
                ManifoldPoint::sphere(0.4, 2.7).unwrap(),
            ),
        ];
        let mut rng = RngState::from_seed(23);
        let n = 10_000;
        let mut acc = [0.0; 3];
        let mut acc_sq = [0.0; 3];
        for _ in 0..n {
            let f = synthesize(&s, &spec, &mut rng).unwrap();
            for (k, (x, y)) in pairs.iter().enumerate() {
                let v = f.evaluate(&s, x).unwrap().re * f.evaluate(&s, y).unwrap().re;
                acc[k] += v;
                acc_sq[k] += v * v;
            }
        }
        for (k, (x, y)) in pairs.iter().enumerate() {
            let mean = acc[k] / n as f64;
            let se = ((acc_sq[k] / n as f64 - mean * mean).max(0.0) / n as f64).sqrt();
            let want = covariance(&s, &spec, x, y).unwrap();
            assert!(
                (mean - want).abs() < 3.5 * se,
                "pair {k}: {mean} vs {want} (se {se})"
            );
        }
    }

    #[test]
    fn covariance_gram_is_positive_semidefinite() {
        let s = Sphere2::new(6).unwrap();
        let spec = PowerSpectrum::parametric_band(&s, 1.0, 3.0).unwrap();
        let mut rng = RngState::from_seed(31);
        let pts: Vec<ManifoldPoint> = (0..12)
            .map(|_| ManifoldPoint::sphere(rng.uniform() * PI, rng.uniform() * 2.0 * PI).unwrap())
            .collect();
        let m = pts.len();
        let mut gram = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in 0..m {
                gram[i][j] = covariance(&s, &spec, &pts[i], &pts[j]).unwrap();
            }
        }
        // quadratic-form check: vᵀ G v ≥ −tol for random directions
        for _ in 0..200 {
            let v: Vec<f64> = (0..m).map(|_| rng.standard_normal()).collect();
            let norm_sq: f64 = v.iter().map(|x| x * x).sum();
            let mut q = 0.0;
            for i in 0..m {
                for j in 0..m {
                    q += v[i] * gram[i][j] * v[j];
                }
            }
            assert!(q > -1e-8 * norm_sq, "negative direction: {q}");
        }
    }
}
