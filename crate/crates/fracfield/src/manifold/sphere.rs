//! The unit sphere S² with its spherical-harmonic eigenbasis.
//!
//! Modes are enumerated degree-major: j = l² + (l + m), so each degree-l
//! band occupies 2l+1 consecutive slots and eigenvalues l(l+1) are
//! nondecreasing. Quadrature is Gauss-Legendre in cos θ crossed with a
//! uniform rule in φ, exact for products of basis functions up to the
//! truncation degree.
//!
//! Brownian increments use the exact law of the geodesic angle: its CDF has
//! the closed Legendre form
//!
//!   F_t(ψ) = (1−c)/2 + ½ Σ_{l≥1} e^{−l(l+1)t} (P_{l−1}(c) − P_{l+1}(c)),
//!   c = cos ψ,
//!
//! obtained by integrating the kernel series term by term with
//! ∫ P_l = (P_{l+1} − P_{l−1})/(2l+1). A draw inverts F_t by bisection, so
//! single steps of arbitrary duration are exact; fixed-step path loops can
//! grab a cached quantile table instead.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::specfun::legendre::legendre_all;
use crate::specfun::quadrature::gauss_legendre;
use crate::specfun::spherical::{spherical_harmonic, spherical_harmonics_all};

use super::point::{wrap_phi, ManifoldPoint};
use super::{KernelValue, RealityPairing, SpectralBackend, Transition};

/// Tail bound above which kernel evaluations carry a truncation warning.
const KERNEL_TOL: f64 = 1e-8;
/// Durations below this use the tangent-plane (Rayleigh) angle law; the
/// curvature correction at these scales is O(t) and far below every
/// statistical tolerance in the suite.
const FLAT_LIMIT: f64 = 1e-7;
const QUANTILE_TABLE_SIZE: usize = 4096;

pub struct Sphere2 {
    l_max: usize,
    quad: Vec<(ManifoldPoint, f64)>,
    angle_tables: RwLock<HashMap<u64, Arc<Vec<f64>>>>,
}

impl Sphere2 {
    pub fn new(l_max: usize) -> Result<Self> {
        Self::with_quadrature(l_max, l_max + 1, 2 * l_max + 2)
    }

    pub fn with_quadrature(l_max: usize, n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 {
            return Err(Error::parameter("sphere quadrature sizes must be positive"));
        }
        let (u, w) = gauss_legendre(n_theta);
        let mut quad = Vec::with_capacity(n_theta * n_phi);
        let dphi = 2.0 * PI / n_phi as f64;
        for (ui, wi) in u.iter().zip(&w) {
            let theta = ui.clamp(-1.0, 1.0).acos();
            for k in 0..n_phi {
                let phi = k as f64 * dphi;
                quad.push((ManifoldPoint::Sphere { theta, phi }, wi * dphi));
            }
        }
        Ok(Sphere2 {
            l_max,
            quad,
            angle_tables: RwLock::new(HashMap::new()),
        })
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    fn degree_of(j: usize) -> usize {
        (j as f64).sqrt().floor() as usize
    }

    /// Series length needed so the dropped angle-law tail is ≪ 1e−14.
    fn series_len(t: f64) -> usize {
        ((40.0 / t).sqrt().ceil() as usize).clamp(8, 20_000)
    }

    /// CDF of the geodesic angle of a duration-t increment.
    fn angle_cdf(t: f64, psi: f64, terms: usize) -> f64 {
        let c = psi.cos();
        let p = legendre_all(terms + 1, c);
        let mut f = 0.5 * (1.0 - c);
        for l in 1..=terms {
            let decay = (-(l as f64) * (l as f64 + 1.0) * t).exp();
            if decay < 1e-17 {
                break;
            }
            f += 0.5 * decay * (p[l - 1] - p[l + 1]);
        }
        f.clamp(0.0, 1.0)
    }

    /// Invert the angle CDF at probability level `u` by bisection.
    fn angle_quantile(t: f64, u: f64) -> f64 {
        let terms = Self::series_len(t);
        let (mut lo, mut hi) = (0.0f64, PI);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if Self::angle_cdf(t, mid, terms) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Exact draw of the geodesic angle moved in duration `t`.
    pub fn sample_geodesic_angle(&self, t: f64, rng: &mut RngState) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::parameter("transition duration must be positive"));
        }
        let u = rng.uniform_open();
        if t < FLAT_LIMIT {
            // tangent-plane limit: |N(0, 2t I_2)| is Rayleigh(√(2t))
            return Ok(((2.0 * t) * (-2.0 * (1.0 - u).ln())).sqrt().min(PI));
        }
        Ok(Self::angle_quantile(t, u))
    }

    /// Cached quantile table of the angle law at fixed `dt`, for path loops
    /// that take many steps of the same duration. Built once per distinct
    /// dt under a write lock; reads are lock-free clones of the Arc.
    pub fn angle_table(&self, dt: f64) -> Result<Arc<Vec<f64>>> {
        if !(dt > 0.0) {
            return Err(Error::parameter("transition duration must be positive"));
        }
        let key = dt.to_bits();
        if let Some(table) = self
            .angle_tables
            .read()
            .expect("angle table lock")
            .get(&key)
        {
            return Ok(Arc::clone(table));
        }
        let mut table = Vec::with_capacity(QUANTILE_TABLE_SIZE + 1);
        for i in 0..=QUANTILE_TABLE_SIZE {
            let u = i as f64 / QUANTILE_TABLE_SIZE as f64;
            let q = if i == 0 {
                0.0
            } else if i == QUANTILE_TABLE_SIZE {
                PI
            } else {
                Self::angle_quantile(dt, u)
            };
            table.push(q);
        }
        let arc = Arc::new(table);
        self.angle_tables
            .write()
            .expect("angle table lock")
            .insert(key, Arc::clone(&arc));
        Ok(arc)
    }

    /// Draw an angle from a cached quantile table (linear interpolation).
    pub fn sample_geodesic_angle_cached(table: &[f64], rng: &mut RngState) -> f64 {
        let u = rng.uniform_open() * (table.len() - 1) as f64;
        let idx = (u as usize).min(table.len() - 2);
        let frac = u - idx as f64;
        table[idx] * (1.0 - frac) + table[idx + 1] * frac
    }

    /// Move from `from` by geodesic angle `psi` in a uniformly random
    /// tangent direction.
    pub fn rotate_by_angle(from: &ManifoldPoint, psi: f64, azimuth: f64) -> Result<ManifoldPoint> {
        let x = from.sphere_unit_vector()?;
        // tangent frame at x
        let helper = if x[2].abs() < 0.9 {
            [0.0, 0.0, 1.0]
        } else {
            [1.0, 0.0, 0.0]
        };
        let e1 = normalize(cross(&helper, &x));
        let e2 = cross(&x, &e1);
        let (s, c) = psi.sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        let y = [
            c * x[0] + s * (ca * e1[0] + sa * e2[0]),
            c * x[1] + s * (ca * e1[1] + sa * e2[1]),
            c * x[2] + s * (ca * e1[2] + sa * e2[2]),
        ];
        let theta = y[2].clamp(-1.0, 1.0).acos();
        let phi = wrap_phi(y[1].atan2(y[0]));
        Ok(ManifoldPoint::Sphere { theta, phi })
    }

    /// Transition density of the geodesic angle ψ (density w.r.t. dψ).
    pub fn angle_density(&self, t: f64, psi: f64) -> Result<f64> {
        let kernel = self.heat_kernel_angle(psi.cos(), t)?;
        Ok(kernel.value * 2.0 * PI * psi.sin())
    }

    fn heat_kernel_angle(&self, cos_angle: f64, t: f64) -> Result<KernelValue> {
        if !(t > 0.0) {
            return Err(Error::parameter("heat kernel requires t > 0"));
        }
        let p = legendre_all(self.l_max, cos_angle);
        let mut value = 0.0;
        for (l, pl) in p.iter().enumerate() {
            let lf = l as f64;
            value += (-(lf * (lf + 1.0)) * t).exp() * (2.0 * lf + 1.0) / (4.0 * PI) * pl;
        }
        let lm = self.l_max as f64;
        let tail_estimate = (-(lm * (lm + 1.0)) * t).exp() / (4.0 * PI * t);
        Ok(KernelValue {
            value,
            tail_estimate,
            truncation_warning: tail_estimate > KERNEL_TOL,
        })
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

impl SpectralBackend for Sphere2 {
    fn id(&self) -> String {
        format!("sphere2(l_max={})", self.l_max)
    }

    fn dim(&self) -> usize {
        2
    }

    fn volume(&self) -> f64 {
        4.0 * PI
    }

    fn is_closed(&self) -> bool {
        true
    }

    fn num_modes(&self) -> usize {
        (self.l_max + 1) * (self.l_max + 1)
    }

    fn eigenvalue(&self, j: usize) -> f64 {
        let l = Self::degree_of(j) as f64;
        l * (l + 1.0)
    }

    fn multiplicity(&self, j: usize) -> usize {
        2 * Self::degree_of(j) + 1
    }

    fn mode_label(&self, j: usize) -> String {
        let l = Self::degree_of(j);
        let m = j as i64 - (l * l + l) as i64;
        format!("l={l} m={m}")
    }

    fn eigenfunction_sup_bound(&self, j: usize) -> f64 {
        let l = Self::degree_of(j) as f64;
        ((2.0 * l + 1.0) / (4.0 * PI)).sqrt()
    }

    fn reality_pairing(&self, j: usize) -> RealityPairing {
        let l = Self::degree_of(j);
        let m = j as i64 - (l * l + l) as i64;
        if m == 0 {
            RealityPairing::SelfConjugate
        } else {
            let partner = (l * l) as i64 + l as i64 - m;
            let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            RealityPairing::Partner {
                index: partner as usize,
                sign,
            }
        }
    }

    fn eigenfunction(&self, j: usize, p: &ManifoldPoint) -> Result<Complex64> {
        let ManifoldPoint::Sphere { theta, phi } = p else {
            return Err(Error::parameter("expected a sphere point"));
        };
        let l = Self::degree_of(j);
        let m = j as i64 - (l * l + l) as i64;
        spherical_harmonic(l as i64, m, *theta, *phi)
    }

    fn basis_at(&self, p: &ManifoldPoint) -> Result<Vec<Complex64>> {
        let ManifoldPoint::Sphere { theta, phi } = p else {
            return Err(Error::parameter("expected a sphere point"));
        };
        Ok(spherical_harmonics_all(self.l_max, *theta, *phi))
    }

    fn quadrature(&self) -> &[(ManifoldPoint, f64)] {
        &self.quad
    }

    fn heat_kernel(&self, x: &ManifoldPoint, y: &ManifoldPoint, t: f64) -> Result<KernelValue> {
        let angle = super::point::sphere_angle(x, y)?;
        self.heat_kernel_angle(angle.cos(), t)
    }

    fn sample_transition(
        &self,
        from: &ManifoldPoint,
        dt: f64,
        rng: &mut RngState,
    ) -> Result<Transition> {
        let psi = self.sample_geodesic_angle(dt, rng)?;
        let azimuth = rng.uniform() * 2.0 * PI;
        Ok(Transition {
            point: Self::rotate_by_angle(from, psi, azimuth)?,
            alive: true,
        })
    }

    fn contains(&self, p: &ManifoldPoint) -> bool {
        matches!(p, ManifoldPoint::Sphere { .. })
    }
}
