//! Points of the shipped manifolds.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A point on one of the spectral backends. Torus coordinates are kept
/// reduced to [−π, π); interval points live in (0, π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ManifoldPoint {
    /// θ ∈ [0, π] (colatitude), φ ∈ [0, 2π).
    Sphere { theta: f64, phi: f64 },
    /// Flat torus point; `dim` ∈ {1, 2}, unused coordinates are zero.
    Torus { x: [f64; 2], dim: usize },
    /// x ∈ (0, π).
    Interval { x: f64 },
}

impl ManifoldPoint {
    pub fn sphere(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::parameter(format!(
                "sphere colatitude must be in [0, pi], got {theta}"
            )));
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::parameter("sphere coordinates must be finite"));
        }
        Ok(ManifoldPoint::Sphere {
            theta,
            phi: wrap_phi(phi),
        })
    }

    pub fn torus1(x: f64) -> Self {
        ManifoldPoint::Torus {
            x: [wrap_torus(x), 0.0],
            dim: 1,
        }
    }

    pub fn torus2(x: f64, y: f64) -> Self {
        ManifoldPoint::Torus {
            x: [wrap_torus(x), wrap_torus(y)],
            dim: 2,
        }
    }

    pub fn interval(x: f64) -> Result<Self> {
        if !(x > 0.0 && x < PI) {
            return Err(Error::parameter(format!(
                "interval point must be in (0, pi), got {x}"
            )));
        }
        Ok(ManifoldPoint::Interval { x })
    }

    /// Cartesian unit vector of a sphere point.
    pub fn sphere_unit_vector(&self) -> Result<[f64; 3]> {
        match self {
            ManifoldPoint::Sphere { theta, phi } => Ok([
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]),
            _ => Err(Error::parameter("not a sphere point")),
        }
    }
}

/// Reduce to [−π, π).
pub fn wrap_torus(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y >= PI {
        -PI
    } else {
        y
    }
}

/// Reduce to [0, 2π).
pub fn wrap_phi(phi: f64) -> f64 {
    phi.rem_euclid(2.0 * PI)
}

/// Geodesic (great-circle) angle between two sphere points.
pub fn sphere_angle(a: &ManifoldPoint, b: &ManifoldPoint) -> Result<f64> {
    let va = a.sphere_unit_vector()?;
    let vb = b.sphere_unit_vector()?;
    let dot: f64 = va.iter().zip(&vb).map(|(x, y)| x * y).sum();
    Ok(dot.clamp(-1.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_wrap_is_idempotent_and_in_range() {
        for x in [-9.0, -PI, -0.1, 0.0, 3.0, PI, 12.56, 100.0] {
            let w = wrap_torus(x);
            assert!((-PI..PI).contains(&w), "{x} -> {w}");
            assert_eq!(wrap_torus(w), w);
        }
    }

    #[test]
    fn range_validation() {
        assert!(ManifoldPoint::sphere(-0.1, 0.0).is_err());
        assert!(ManifoldPoint::sphere(1.0, 100.0).is_ok());
        assert!(ManifoldPoint::interval(0.0).is_err());
        assert!(ManifoldPoint::interval(PI).is_err());
        assert!(ManifoldPoint::interval(1.5).is_ok());
    }

    #[test]
    fn sphere_angle_of_antipodes() {
        let a = ManifoldPoint::sphere(0.0, 0.0).unwrap();
        let b = ManifoldPoint::sphere(PI, 0.0).unwrap();
        assert!((sphere_angle(&a, &b).unwrap() - PI).abs() < 1e-14);
    }
}
