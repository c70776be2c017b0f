//! Spherical harmonics Y_lm, orthonormal on S² under μ = sin θ dθ dφ.
//!
//! The associated Legendre part is computed fully normalized (the m-then-l
//! recurrence carries the normalization along), so no factorial ratios ever
//! appear and degrees well beyond l ≈ 30 stay finite. The Condon-Shortley
//! phase is included, and Y_{l,−m} = (−1)^m conj(Y_{lm}).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Degree/order pair with |m| ≤ l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphericalHarmonicIndex {
    pub l: i64,
    pub m: i64,
}

impl SphericalHarmonicIndex {
    pub fn new(l: i64, m: i64) -> Result<Self> {
        if l < 0 || m.abs() > l {
            return Err(Error::parameter(format!(
                "spherical harmonic index needs l >= 0 and |m| <= l, got l={l} m={m}"
            )));
        }
        Ok(SphericalHarmonicIndex { l, m })
    }
}

/// Normalized associated Legendre P̄_lm(cos θ) such that
/// Y_lm(θ, φ) = P̄_lm(cos θ) e^{imφ}; requires m ≥ 0.
///
/// `x` is cos θ and `s` is sin θ ≥ 0 (passed separately so callers on the
/// sphere don't lose precision near the poles).
fn normalized_assoc_legendre_table(l_max: usize, x: f64, s: f64) -> Vec<Vec<f64>> {
    // table[m][l - m] = P̄_lm
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(l_max + 1);
    let mut pmm = 1.0 / (4.0 * std::f64::consts::PI).sqrt(); // P̄_00
    for m in 0..=l_max {
        let mf = m as f64;
        if m > 0 {
            // P̄_mm = −sqrt((2m+1)/(2m)) sin θ P̄_{m−1,m−1}
            pmm *= -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * s;
        }
        let mut col = Vec::with_capacity(l_max - m + 1);
        col.push(pmm);
        if m < l_max {
            // P̄_{m+1,m} = sqrt(2m+3) x P̄_mm
            col.push((2.0 * mf + 3.0).sqrt() * x * pmm);
            for l in (m + 2)..=l_max {
                let lf = l as f64;
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let b = (((lf - 1.0) * (lf - 1.0) - mf * mf)
                    / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0))
                    .sqrt();
                let p = a * (x * col[l - m - 1] - b * col[l - m - 2]);
                col.push(p);
            }
        }
        table.push(col);
    }
    table
}

/// Normalized associated Legendre P̄_lm(x) for a single (l, m), m may be
/// negative: P̄_{l,−m} = (−1)^m P̄_{lm} under this normalization.
pub fn assoc_legendre(l: i64, m: i64, x: f64) -> Result<f64> {
    SphericalHarmonicIndex::new(l, m)?;
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::parameter(format!(
            "assoc_legendre: |x| <= 1 required, got {x}"
        )));
    }
    let ma = m.unsigned_abs() as usize;
    let s = (1.0 - x * x).max(0.0).sqrt();
    let table = normalized_assoc_legendre_table(l as usize, x, s);
    let v = table[ma][l as usize - ma];
    Ok(if m < 0 && ma % 2 == 1 { -v } else { v })
}

/// Y_lm(θ, φ) with θ ∈ [0, π], φ ∈ [0, 2π].
pub fn spherical_harmonic(l: i64, m: i64, theta: f64, phi: f64) -> Result<Complex64> {
    SphericalHarmonicIndex::new(l, m)?;
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::parameter(format!(
            "theta must be in [0, pi], got {theta}"
        )));
    }
    let p = assoc_legendre(l, m, theta.cos())?;
    Ok(Complex64::from_polar(1.0, m as f64 * phi) * p)
}

/// All Y_lm for l ≤ l_max at one point, in (l, m) order with m running
/// −l..l inside each degree. One recurrence sweep, O(l_max²).
pub fn spherical_harmonics_all(l_max: usize, theta: f64, phi: f64) -> Vec<Complex64> {
    let x = theta.cos();
    let s = theta.sin().max(0.0);
    let table = normalized_assoc_legendre_table(l_max, x, s);
    let n = (l_max + 1) * (l_max + 1);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    // e^{imφ} built incrementally
    let step = Complex64::from_polar(1.0, phi);
    let mut phases = Vec::with_capacity(l_max + 1);
    let mut ph = Complex64::new(1.0, 0.0);
    for _ in 0..=l_max {
        phases.push(ph);
        ph *= step;
    }
    for l in 0..=l_max {
        let base = l * l + l; // index of (l, 0)
        for m in 0..=l {
            let p = table[m][l - m];
            let y = phases[m] * p;
            out[base + m] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                out[base - m] = y.conj() * sign;
            }
        }
    }
    out
}

/// Flat index of (l, m) in the enumeration used by [`spherical_harmonics_all`].
pub fn mode_index(l: i64, m: i64) -> usize {
    (l * l + l + m) as usize
}
