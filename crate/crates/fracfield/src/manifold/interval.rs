//! The interval (0, π) with Dirichlet (absorbing) ends.
//!
//! φ_j(x) = √(2/π) sin(jx), λ_j = j², j ≥ 1 — the minimal compact manifold
//! with boundary, exercising the killed-Brownian-motion form of every
//! solver. Transitions are Gaussian proposals killed by the exact
//! Brownian-bridge boundary-crossing probability, so absorption inside a
//! step is accounted for even when the endpoints stay interior.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::specfun::quadrature::gauss_legendre_on;

use super::point::ManifoldPoint;
use super::{KernelValue, RealityPairing, SpectralBackend, Transition};

const KERNEL_TOL: f64 = 1e-8;

pub struct IntervalDirichlet {
    j_max: usize,
    quad: Vec<(ManifoldPoint, f64)>,
}

impl IntervalDirichlet {
    pub fn new(j_max: usize) -> Result<Self> {
        Self::with_quadrature(j_max, (2 * j_max).max(256))
    }

    pub fn with_quadrature(j_max: usize, n_quad: usize) -> Result<Self> {
        if j_max == 0 {
            return Err(Error::parameter("interval needs at least one mode"));
        }
        // Gauss nodes resolve sin(j x) products only while the rule's
        // polynomial degree covers the oscillation
        if n_quad < j_max {
            return Err(Error::parameter(format!(
                "interval quadrature too coarse: need >= {j_max} nodes"
            )));
        }
        let (xs, ws) = gauss_legendre_on(n_quad, 0.0, PI);
        let quad = xs
            .into_iter()
            .zip(ws)
            .map(|(x, w)| (ManifoldPoint::Interval { x }, w))
            .collect();
        Ok(IntervalDirichlet { j_max, quad })
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    fn coord(&self, p: &ManifoldPoint) -> Result<f64> {
        match p {
            ManifoldPoint::Interval { x } => Ok(*x),
            _ => Err(Error::parameter("expected an interval point")),
        }
    }
}

impl SpectralBackend for IntervalDirichlet {
    fn id(&self) -> String {
        format!("interval(j_max={})", self.j_max)
    }

    fn dim(&self) -> usize {
        1
    }

    fn volume(&self) -> f64 {
        PI
    }

    fn is_closed(&self) -> bool {
        false
    }

    fn num_modes(&self) -> usize {
        self.j_max
    }

    fn eigenvalue(&self, j: usize) -> f64 {
        let jf = (j + 1) as f64;
        jf * jf
    }

    fn multiplicity(&self, _j: usize) -> usize {
        1
    }

    fn mode_label(&self, j: usize) -> String {
        format!("j={}", j + 1)
    }

    fn eigenfunction_sup_bound(&self, _j: usize) -> f64 {
        (2.0 / PI).sqrt()
    }

    fn reality_pairing(&self, _j: usize) -> RealityPairing {
        RealityPairing::SelfConjugate
    }

    fn eigenfunction(&self, j: usize, p: &ManifoldPoint) -> Result<Complex64> {
        let x = self.coord(p)?;
        let jf = (j + 1) as f64;
        Ok(Complex64::new((2.0 / PI).sqrt() * (jf * x).sin(), 0.0))
    }

    fn basis_at(&self, p: &ManifoldPoint) -> Result<Vec<Complex64>> {
        let x = self.coord(p)?;
        let norm = (2.0 / PI).sqrt();
        // sin(jx) by the angle-addition recurrence
        let (s1, c1) = x.sin_cos();
        let mut out = Vec::with_capacity(self.j_max);
        let (mut s_prev, mut s) = (0.0, s1);
        for _ in 0..self.j_max {
            out.push(Complex64::new(norm * s, 0.0));
            let s_next = 2.0 * c1 * s - s_prev;
            s_prev = s;
            s = s_next;
        }
        Ok(out)
    }

    fn quadrature(&self) -> &[(ManifoldPoint, f64)] {
        &self.quad
    }

    fn heat_kernel(&self, x: &ManifoldPoint, y: &ManifoldPoint, t: f64) -> Result<KernelValue> {
        if !(t > 0.0) {
            return Err(Error::parameter("heat kernel requires t > 0"));
        }
        let a = self.coord(x)?;
        let b = self.coord(y)?;
        let mut value = 0.0;
        for j in 1..=self.j_max {
            let jf = j as f64;
            let decay = (-jf * jf * t).exp();
            if decay < 1e-18 {
                break;
            }
            value += decay * 2.0 / PI * (jf * a).sin() * (jf * b).sin();
        }
        let jm = (self.j_max + 1) as f64;
        let tail_estimate = 2.0 / PI * (-jm * jm * t).exp() / (1.0 - (-(2.0 * jm + 1.0) * t).exp());
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
        let x = self.coord(from)?;
        let y = x + (2.0 * dt).sqrt() * rng.standard_normal();
        if y <= 0.0 || y >= PI {
            return Ok(Transition {
                point: *from,
                alive: false,
            });
        }
        // bridge crossing probabilities for each end; the generator is Δ,
        // so the bridge variance parameter is 2
        let p_left = (-(x * y) / dt).exp();
        let p_right = (-((PI - x) * (PI - y)) / dt).exp();
        let p_kill = (p_left + p_right).min(1.0);
        if rng.uniform() < p_kill {
            return Ok(Transition {
                point: ManifoldPoint::Interval { x: y },
                alive: false,
            });
        }
        Ok(Transition {
            point: ManifoldPoint::Interval { x: y },
            alive: true,
        })
    }

    fn contains(&self, p: &ManifoldPoint) -> bool {
        matches!(p, ManifoldPoint::Interval { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn dirichlet_spectrum_starts_positive() {
        let b = IntervalDirichlet::new(16).unwrap();
        assert_eq!(b.eigenvalue(0), 1.0);
        assert_eq!(b.eigenvalue(3), 16.0);
        assert!(!b.is_closed());
    }

    #[test]
    fn basis_sweep_matches_single_modes() {
        let b = IntervalDirichlet::new(32).unwrap();
        let p = ManifoldPoint::interval(1.234).unwrap();
        let all = b.basis_at(&p).unwrap();
        for j in 0..32 {
            let single = b.eigenfunction(j, &p).unwrap();
            assert_abs_diff_eq!(all[j].re, single.re, epsilon = 1e-12);
        }
    }

    #[test]
    fn quadrature_orthonormality() {
        let b = IntervalDirichlet::new(24).unwrap();
        for j in 0..24 {
            for k in j..24 {
                let mut acc = 0.0;
                for (p, w) in b.quadrature() {
                    acc +=
                        b.eigenfunction(j, p).unwrap().re * b.eigenfunction(k, p).unwrap().re * w;
                }
                let want = if j == k { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(acc, want, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn kernel_is_nonnegative_and_subprobability() {
        let b = IntervalDirichlet::new(128).unwrap();
        let x = ManifoldPoint::interval(1.0).unwrap();
        for t in [0.01, 0.1, 1.0] {
            let mut mass = 0.0;
            for (y, w) in b.quadrature() {
                let k = b.heat_kernel(&x, y, t).unwrap().value;
                assert!(k >= -1e-10, "kernel dipped to {k} at t={t}");
                mass += k * w;
            }
            assert!(mass < 1.0 + 1e-10, "killed kernel mass {mass} exceeds 1");
        }
    }

    #[test]
    fn survival_decays_at_the_principal_rate() {
        // P{τ > t} ~ (4/π) e^{−t} for x = π/2 at large t
        let b = IntervalDirichlet::new(64).unwrap();
        let x = ManifoldPoint::interval(PI / 2.0).unwrap();
        let survival = |t: f64| -> f64 {
            b.quadrature()
                .iter()
                .map(|(y, w)| b.heat_kernel(&x, y, t).unwrap().value * w)
                .sum()
        };
        let s3 = survival(3.0);
        let s4 = survival(4.0);
        assert_relative_eq!(s3 / s4, 1.0f64.exp(), max_relative = 1e-3);
    }

    #[test]
    fn killed_paths_absorb_and_stay_dead() {
        let b = IntervalDirichlet::new(16).unwrap();
        let mut rng = RngState::from_seed(6);
        let start = ManifoldPoint::interval(0.3).unwrap();
        let mut deaths = 0;
        for _ in 0..200 {
            let path = super::super::sample_brownian_path(&b, &start, 2.0, 40, &mut rng).unwrap();
            let mut dead = false;
            for a in &path.alive {
                if dead {
                    assert!(!a, "path resurrected");
                }
                dead = dead || !a;
            }
            if dead {
                deaths += 1;
            }
        }
        assert!(
            deaths > 150,
            "expected most paths dead by t=2, got {deaths}"
        );
    }

    #[test]
    fn mc_survival_matches_eigen_series() {
        // survival from x against the sine-series of the indicator
        let b = IntervalDirichlet::new(64).unwrap();
        let x0 = 1.1;
        let start = ManifoldPoint::interval(x0).unwrap();
        let t = 0.5;
        let mut rng = RngState::from_seed(15);
        let n = 40_000;
        let mut alive_count = 0;
        for _ in 0..n {
            let path = super::super::sample_brownian_path(&b, &start, t, 20, &mut rng).unwrap();
            if *path.alive.last().unwrap() {
                alive_count += 1;
            }
        }
        let p_mc = alive_count as f64 / n as f64;
        // series: Σ_j e^{−j²t} φ_j(x0) ∫ φ_j = Σ odd j e^{−j²t} √(2/π) sin(j x0) · 2√(2/π)/j
        let mut p_series = 0.0;
        for j in 1..=63 {
            let jf = j as f64;
            let coeff = (2.0 / PI).sqrt() * (1.0 - (jf * PI).cos()) / jf; // ∫ φ_j dμ
            p_series += (-jf * jf * t).exp() * (2.0 / PI).sqrt() * (jf * x0).sin() * coeff;
        }
        let se = (p_mc * (1.0 - p_mc) / n as f64).sqrt();
        assert!(
            (p_mc - p_series).abs() < 3.5 * se,
            "MC survival {p_mc} vs series {p_series} (se {se})"
        );
    }
}
