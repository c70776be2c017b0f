//! Spectral backends: concrete manifolds presented through eigenpairs of
//! the (negative) Laplace-Beltrami operator, a quadrature rule for μ, heat
//! kernels and exact Brownian transition samplers.
//!
//! Shipped backends:
//!
//! * [`Sphere2`] — the unit sphere, λ_l = l(l+1) with multiplicity 2l+1,
//!   eigenfunctions the spherical harmonics Y_lm;
//! * [`Torus`] — flat torus in 1 or 2 dimensions, coordinates in [−π, π)ⁿ,
//!   eigenfunctions (2π)^{−n/2} e^{ik·x};
//! * [`IntervalDirichlet`] — (0, π) with absorbing ends, φ_j = √(2/π) sin jx,
//!   λ_j = j²; the minimal instance of the killed (Dirichlet) theory.
//!
//! Backends are immutable after construction and safe to share across
//! threads; samplers take the caller's RNG state.

pub mod interval;
pub mod point;
pub mod sphere;
pub mod torus;

use num_complex::Complex64;

pub use interval::IntervalDirichlet;
pub use point::{sphere_angle, wrap_phi, wrap_torus, ManifoldPoint};
pub use sphere::Sphere2;
pub use torus::Torus;

use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::solver::coefficients::SpectralCoefficients;

/// A heat-kernel evaluation together with its truncation-tail bound.
#[derive(Debug, Clone, Copy)]
pub struct KernelValue {
    pub value: f64,
    /// Bound on the dropped tail Σ_{j > J} e^{−λ_j t}‖φ_j‖²_∞.
    pub tail_estimate: f64,
    /// Set when the tail bound exceeds the backend's kernel tolerance.
    pub truncation_warning: bool,
}

/// Outcome of one Brownian transition step; `alive` is always true on the
/// closed backends and records absorption for the Dirichlet interval.
#[derive(Debug, Clone, Copy)]
pub struct Transition {
    pub point: ManifoldPoint,
    pub alive: bool,
}

/// How a mode pairs with its complex conjugate under the reality
/// constraint of real-valued fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealityPairing {
    /// The coefficient of this mode must be real (m = 0, k = 0, or a real
    /// basis function).
    SelfConjugate,
    /// `c_partner = sign * conj(c_self)`.
    Partner { index: usize, sign: f64 },
}

/// A manifold presented as eigendata: ordered eigenpairs, quadrature,
/// kernels and a transition sampler.
pub trait SpectralBackend: Send + Sync {
    /// Short identifier embedding the truncation, e.g. `sphere2(l_max=16)`.
    fn id(&self) -> String;
    fn dim(&self) -> usize;
    fn volume(&self) -> f64;
    /// Closed manifolds (no boundary) have λ_0 = 0.
    fn is_closed(&self) -> bool;
    fn num_modes(&self) -> usize;
    /// Eigenvalue of mode `j`; nondecreasing in `j`.
    fn eigenvalue(&self, j: usize) -> f64;
    /// Number of modes sharing mode `j`'s eigenvalue.
    fn multiplicity(&self, j: usize) -> usize;
    /// Human-readable mode label (`l=2,m=-1`, `k=(0,1)`, `j=4`).
    fn mode_label(&self, j: usize) -> String;
    /// Sup-norm bound of eigenfunction `j`.
    fn eigenfunction_sup_bound(&self, j: usize) -> f64;
    /// Conjugation structure of mode `j` for real fields.
    fn reality_pairing(&self, j: usize) -> RealityPairing;
    /// φ_j(p).
    fn eigenfunction(&self, j: usize, p: &ManifoldPoint) -> Result<Complex64>;
    /// All φ_j(p) for j < num_modes in one sweep.
    fn basis_at(&self, p: &ManifoldPoint) -> Result<Vec<Complex64>>;
    /// Quadrature nodes and weights approximating ∫_M · dμ.
    fn quadrature(&self) -> &[(ManifoldPoint, f64)];
    /// p(x, y, t) with a truncation-tail estimate, t > 0.
    fn heat_kernel(&self, x: &ManifoldPoint, y: &ManifoldPoint, t: f64) -> Result<KernelValue>;
    /// One exact draw from the transition density p(from, ·, dt).
    fn sample_transition(
        &self,
        from: &ManifoldPoint,
        dt: f64,
        rng: &mut RngState,
    ) -> Result<Transition>;
    /// Whether `p` is a point of this manifold.
    fn contains(&self, p: &ManifoldPoint) -> bool;

    /// Index of the first mode of mode `j`'s eigenvalue band.
    fn band_start(&self, j: usize) -> usize {
        let lam = self.eigenvalue(j);
        let mut k = j;
        while k > 0 && self.eigenvalue(k - 1) == lam {
            k -= 1;
        }
        k
    }

    /// Rank of mode `j`'s eigenvalue band (0 for the lowest band).
    fn band_rank(&self, j: usize) -> usize {
        let mut rank = 0;
        let mut k = self.band_start(j);
        while k > 0 {
            k = self.band_start(k - 1);
            rank += 1;
        }
        rank
    }
}

/// κ_j = ⟨f, φ_j⟩ by quadrature, for f evaluated at the quadrature nodes.
pub fn project(
    backend: &dyn SpectralBackend,
    f: &dyn Fn(&ManifoldPoint) -> f64,
) -> Result<SpectralCoefficients> {
    let mut values = vec![Complex64::new(0.0, 0.0); backend.num_modes()];
    for (p, w) in backend.quadrature() {
        let fv = f(p);
        if fv != 0.0 {
            let basis = backend.basis_at(p)?;
            for (v, phi) in values.iter_mut().zip(&basis) {
                *v += fv * *w * phi.conj();
            }
        }
    }
    Ok(SpectralCoefficients::new(backend.id(), values))
}

/// A sampled Brownian trajectory; `alive` goes false at absorption and
/// stays false (the interval backend only).
#[derive(Debug, Clone)]
pub struct BrownianPath {
    pub start: ManifoldPoint,
    pub times: Vec<f64>,
    pub points: Vec<ManifoldPoint>,
    pub alive: Vec<bool>,
}

impl BrownianPath {
    pub fn endpoint(&self) -> (&ManifoldPoint, bool) {
        (
            self.points.last().unwrap_or(&self.start),
            *self.alive.last().unwrap_or(&true),
        )
    }
}

/// Path of duration `t` in `steps` equal transition steps.
pub fn sample_brownian_path(
    backend: &dyn SpectralBackend,
    start: &ManifoldPoint,
    t: f64,
    steps: usize,
    rng: &mut RngState,
) -> Result<BrownianPath> {
    if steps == 0 {
        return Err(Error::parameter("brownian path needs at least one step"));
    }
    if !(t > 0.0) {
        return Err(Error::parameter("brownian path duration must be positive"));
    }
    let dt = t / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    let mut alive = Vec::with_capacity(steps + 1);
    times.push(0.0);
    points.push(*start);
    alive.push(true);
    let mut current = *start;
    let mut live = true;
    for k in 1..=steps {
        if live {
            let tr = backend.sample_transition(&current, dt, rng)?;
            current = tr.point;
            live = tr.alive;
        }
        times.push(k as f64 * dt);
        points.push(current);
        alive.push(live);
    }
    Ok(BrownianPath {
        start: *start,
        times,
        points,
        alive,
    })
}

/// Weyl-law diagnostic: ratios λ_k^{n/2} ω_n V / ((2π)^n k) for k ≤ j_max
/// (1-based k). Ratios approach 1 as k grows.
#[derive(Debug, Clone)]
pub struct WeylReport {
    pub ratios: Vec<f64>,
}

pub fn weyl_diagnostic(backend: &dyn SpectralBackend, j_max: usize) -> Result<WeylReport> {
    if j_max == 0 || j_max > backend.num_modes() {
        return Err(Error::parameter(format!(
            "weyl_diagnostic: j_max must be in 1..={}, got {j_max}",
            backend.num_modes()
        )));
    }
    let n = backend.dim();
    let omega_n = match n {
        1 => 2.0,
        2 => std::f64::consts::PI,
        _ => return Err(Error::unsupported("weyl_diagnostic: only n = 1, 2 shipped")),
    };
    let vol = backend.volume();
    let two_pi_n = (2.0 * std::f64::consts::PI).powi(n as i32);
    let ratios = (1..=j_max)
        .map(|k| {
            let lam = backend.eigenvalue(k - 1);
            lam.powf(n as f64 / 2.0) * omega_n * vol / (two_pi_n * k as f64)
        })
        .collect();
    Ok(WeylReport { ratios })
}
