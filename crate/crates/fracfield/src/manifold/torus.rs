//! Flat torus T^n (n = 1, 2) on [−π, π)^n with Lebesgue μ.
//!
//! Eigenfunctions (2π)^{−n/2} e^{ik·x}, eigenvalues |k|², enumerated by
//! nondecreasing |k|² with lexicographic tie-break. The heat kernel has two
//! independent representations: the eigen-sum and the wrapped Gaussian
//! image sum with prefactor (4πt)^{−n/2}; they agree to machine precision
//! and both are exposed.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::RngState;

use super::point::{wrap_torus, ManifoldPoint};
use super::{KernelValue, RealityPairing, SpectralBackend, Transition};

const KERNEL_TOL: f64 = 1e-8;

pub struct Torus {
    dim: usize,
    k_max: i64,
    modes: Vec<[i64; 2]>,
    quad: Vec<(ManifoldPoint, f64)>,
}

impl Torus {
    pub fn new(dim: usize, k_max: usize) -> Result<Self> {
        let grid = 2 * k_max + 2;
        Self::with_grid(dim, k_max, grid)
    }

    /// `grid` points per coordinate; the uniform rule is exact for
    /// frequencies up to grid − 1, so grid > 2 k_max keeps basis products
    /// exactly integrable.
    pub fn with_grid(dim: usize, k_max: usize, grid: usize) -> Result<Self> {
        if !(dim == 1 || dim == 2) {
            return Err(Error::parameter(format!(
                "torus dimension must be 1 or 2, got {dim}"
            )));
        }
        if grid <= 2 * k_max {
            return Err(Error::parameter(format!(
                "torus grid must exceed 2*k_max = {}, got {grid}",
                2 * k_max
            )));
        }
        let k_max = k_max as i64;
        let mut modes = Vec::new();
        if dim == 1 {
            for k in -k_max..=k_max {
                modes.push([k, 0]);
            }
        } else {
            for k1 in -k_max..=k_max {
                for k2 in -k_max..=k_max {
                    modes.push([k1, k2]);
                }
            }
        }
        modes.sort_by_key(|k| (k[0] * k[0] + k[1] * k[1], k[0], k[1]));

        let h = 2.0 * PI / grid as f64;
        let weight = h.powi(dim as i32);
        let mut quad = Vec::new();
        if dim == 1 {
            for i in 0..grid {
                quad.push((ManifoldPoint::torus1(-PI + i as f64 * h), weight));
            }
        } else {
            for i in 0..grid {
                for j in 0..grid {
                    quad.push((
                        ManifoldPoint::torus2(-PI + i as f64 * h, -PI + j as f64 * h),
                        weight,
                    ));
                }
            }
        }
        Ok(Torus {
            dim,
            k_max,
            modes,
            quad,
        })
    }

    pub fn k_max(&self) -> usize {
        self.k_max as usize
    }

    pub fn mode_wavevector(&self, j: usize) -> [i64; 2] {
        self.modes[j]
    }

    fn coords<'a>(&self, p: &'a ManifoldPoint) -> Result<&'a [f64; 2]> {
        match p {
            ManifoldPoint::Torus { x, dim } if *dim == self.dim => Ok(x),
            _ => Err(Error::parameter(
                "expected a torus point of matching dimension",
            )),
        }
    }

    /// 1-D eigen-sum kernel (1 + 2 Σ_{k≥1} e^{−k²t} cos(k d)) / 2π.
    fn kernel_1d_eigen(&self, d: f64, t: f64) -> f64 {
        let mut acc = 1.0;
        for k in 1..=self.k_max {
            let kf = k as f64;
            let decay = (-kf * kf * t).exp();
            if decay < 1e-18 {
                break;
            }
            acc += 2.0 * decay * (kf * d).cos();
        }
        acc / (2.0 * PI)
    }

    /// 1-D wrapped Gaussian (4πt)^{−1/2} Σ_m exp(−(d−2πm)²/(4t)).
    fn kernel_1d_images(d: f64, t: f64) -> f64 {
        let span = (160.0 * t).sqrt();
        let m_range = ((span + PI) / (2.0 * PI)).ceil() as i64 + 1;
        let mut acc = 0.0;
        for m in -m_range..=m_range {
            let u = d - 2.0 * PI * m as f64;
            acc += (-u * u / (4.0 * t)).exp();
        }
        acc / (4.0 * PI * t).sqrt()
    }

    /// Heat kernel by the wrapped-Gaussian image sum; the independent dual
    /// of the eigen-sum in [`SpectralBackend::heat_kernel`].
    pub fn heat_kernel_images(&self, x: &ManifoldPoint, y: &ManifoldPoint, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::parameter("heat kernel requires t > 0"));
        }
        let a = self.coords(x)?;
        let b = self.coords(y)?;
        let mut v = 1.0;
        for i in 0..self.dim {
            v *= Self::kernel_1d_images(a[i] - b[i], t);
        }
        Ok(v)
    }
}

impl SpectralBackend for Torus {
    fn id(&self) -> String {
        format!("torus{}(k_max={})", self.dim, self.k_max)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn volume(&self) -> f64 {
        (2.0 * PI).powi(self.dim as i32)
    }

    fn is_closed(&self) -> bool {
        true
    }

    fn num_modes(&self) -> usize {
        self.modes.len()
    }

    fn eigenvalue(&self, j: usize) -> f64 {
        let k = self.modes[j];
        (k[0] * k[0] + k[1] * k[1]) as f64
    }

    fn multiplicity(&self, j: usize) -> usize {
        let lam = self.eigenvalue(j);
        self.modes
            .iter()
            .filter(|k| ((k[0] * k[0] + k[1] * k[1]) as f64) == lam)
            .count()
    }

    fn mode_label(&self, j: usize) -> String {
        let k = self.modes[j];
        if self.dim == 1 {
            format!("k={}", k[0])
        } else {
            format!("k=({} {})", k[0], k[1])
        }
    }

    fn eigenfunction_sup_bound(&self, _j: usize) -> f64 {
        (2.0 * PI).powf(-(self.dim as f64) / 2.0)
    }

    fn reality_pairing(&self, j: usize) -> RealityPairing {
        let k = self.modes[j];
        if k[0] == 0 && k[1] == 0 {
            return RealityPairing::SelfConjugate;
        }
        let neg = [-k[0], -k[1]];
        let partner = self
            .modes
            .iter()
            .position(|m| *m == neg)
            .expect("conjugate mode is always enumerated");
        RealityPairing::Partner {
            index: partner,
            sign: 1.0,
        }
    }

    fn eigenfunction(&self, j: usize, p: &ManifoldPoint) -> Result<Complex64> {
        let x = self.coords(p)?;
        let k = self.modes[j];
        let phase = k[0] as f64 * x[0] + k[1] as f64 * x[1];
        Ok(Complex64::from_polar(
            (2.0 * PI).powf(-(self.dim as f64) / 2.0),
            phase,
        ))
    }

    fn basis_at(&self, p: &ManifoldPoint) -> Result<Vec<Complex64>> {
        let x = self.coords(p)?;
        let norm = (2.0 * PI).powf(-(self.dim as f64) / 2.0);
        Ok(self
            .modes
            .iter()
            .map(|k| {
                let phase = k[0] as f64 * x[0] + k[1] as f64 * x[1];
                Complex64::from_polar(norm, phase)
            })
            .collect())
    }

    fn quadrature(&self) -> &[(ManifoldPoint, f64)] {
        &self.quad
    }

    fn heat_kernel(&self, x: &ManifoldPoint, y: &ManifoldPoint, t: f64) -> Result<KernelValue> {
        if !(t > 0.0) {
            return Err(Error::parameter("heat kernel requires t > 0"));
        }
        let a = self.coords(x)?;
        let b = self.coords(y)?;
        let mut value = 1.0;
        for i in 0..self.dim {
            value *= self.kernel_1d_eigen(a[i] - b[i], t);
        }
        // per-dimension geometric tail bound, summed across dimensions
        let km = self.k_max as f64 + 1.0;
        let tail_1d =
            2.0 * (-km * km * t).exp() / (1.0 - (-(2.0 * km + 1.0) * t).exp()) / (2.0 * PI);
        let tail_estimate = self.dim as f64 * tail_1d / (2.0 * PI).powi(self.dim as i32 - 1);
        Ok(KernelValue {
            value,
            tail_estimate,
            truncation_warning: tail_estimate > KERNEL_TOL,
        })
    }

    fn sample_transition(
        &self,
        from: &ManifoldPoint,
        dt: f64,
        rng: &mut RngState,
    ) -> Result<Transition> {
        if !(dt > 0.0) {
            return Err(Error::parameter("transition duration must be positive"));
        }
        let x = self.coords(from)?;
        let sd = (2.0 * dt).sqrt();
        let mut y = [0.0; 2];
        for i in 0..self.dim {
            y[i] = wrap_torus(x[i] + sd * rng.standard_normal());
        }
        let point = if self.dim == 1 {
            ManifoldPoint::torus1(y[0])
        } else {
            ManifoldPoint::torus2(y[0], y[1])
        };
        Ok(Transition { point, alive: true })
    }

    fn contains(&self, p: &ManifoldPoint) -> bool {
        matches!(p, ManifoldPoint::Torus { dim, .. } if *dim == self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn enumeration_is_sorted_and_starts_at_zero() {
        for dim in [1, 2] {
            let t = Torus::new(dim, 6).unwrap();
            assert_eq!(t.eigenvalue(0), 0.0);
            for j in 1..t.num_modes() {
                assert!(t.eigenvalue(j) >= t.eigenvalue(j - 1));
            }
        }
        assert_eq!(Torus::new(1, 6).unwrap().num_modes(), 13);
        assert_eq!(Torus::new(2, 6).unwrap().num_modes(), 169);
    }

    #[test]
    fn eigen_sum_matches_image_sum() {
        let t1 = Torus::new(1, 64).unwrap();
        let x = ManifoldPoint::torus1(0.7);
        let y = ManifoldPoint::torus1(-0.3);
        for t in [0.1, 0.5, 1.0, 2.0] {
            let eig = t1.heat_kernel(&x, &y, t).unwrap().value;
            let img = t1.heat_kernel_images(&x, &y, t).unwrap();
            assert_abs_diff_eq!(eig, img, epsilon = 1e-13);
        }
        let t2 = Torus::new(2, 48).unwrap();
        let x = ManifoldPoint::torus2(0.7, -1.1);
        let y = ManifoldPoint::torus2(-0.3, 2.0);
        for t in [0.1, 0.5, 2.0] {
            let eig = t2.heat_kernel(&x, &y, t).unwrap().value;
            let img = t2.heat_kernel_images(&x, &y, t).unwrap();
            assert_abs_diff_eq!(eig, img, epsilon = 1e-13);
        }
    }

    #[test]
    fn kernel_mass_is_one() {
        let t2 = Torus::new(2, 16).unwrap();
        let x = ManifoldPoint::torus2(0.3, 0.9);
        for t in [0.2, 1.0] {
            let mass: f64 = t2
                .quadrature()
                .iter()
                .map(|(y, w)| t2.heat_kernel(&x, y, t).unwrap().value * w)
                .sum();
            assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn quadrature_diagonalizes_the_basis() {
        let t1 = Torus::new(1, 8).unwrap();
        for j in 0..t1.num_modes() {
            for k in j..t1.num_modes() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (p, w) in t1.quadrature() {
                    let a = t1.eigenfunction(j, p).unwrap();
                    let b = t1.eigenfunction(k, p).unwrap();
                    acc += a * b.conj() * *w;
                }
                let want = if j == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(acc.re, want, epsilon = 1e-12);
                assert_abs_diff_eq!(acc.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn short_time_transition_is_effectively_unwrapped() {
        // at dt = 0.01 the wrapping mass is < 1e-10, so increments look
        // exactly Gaussian: check the sample variance
        let t1 = Torus::new(1, 8).unwrap();
        let mut rng = RngState::from_seed(4);
        let x0 = ManifoldPoint::torus1(0.0);
        let n = 100_000;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let tr = t1.sample_transition(&x0, 0.01, &mut rng).unwrap();
            let ManifoldPoint::Torus { x, .. } = tr.point else {
                panic!()
            };
            sumsq += x[0] * x[0];
        }
        let var = sumsq / n as f64;
        assert_relative_eq!(var, 0.02, max_relative = 0.03);
    }

    #[test]
    fn reality_pairing_points_to_negated_wavevector() {
        let t2 = Torus::new(2, 4).unwrap();
        for j in 0..t2.num_modes() {
            match t2.reality_pairing(j) {
                RealityPairing::SelfConjugate => assert_eq!(t2.mode_wavevector(j), [0, 0]),
                RealityPairing::Partner { index, sign } => {
                    let k = t2.mode_wavevector(j);
                    let nk = t2.mode_wavevector(index);
                    assert_eq!([k[0] + nk[0], k[1] + nk[1]], [0, 0]);
                    assert_eq!(sign, 1.0);
                }
            }
        }
    }

    #[test]
    fn rejects_mismatched_points() {
        let t1 = Torus::new(1, 4).unwrap();
        let p = ManifoldPoint::sphere(0.5, 0.5).unwrap();
        assert!(t1.heat_kernel(&p, &p, 0.5).is_err());
        assert!(!t1.contains(&p));
    }
}
