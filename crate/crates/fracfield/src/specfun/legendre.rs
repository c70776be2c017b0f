//! Legendre polynomials by the stable three-term recurrence
//! (l+1) P_{l+1} = (2l+1) x P_l − l P_{l-1}.

use crate::error::{Error, Result};

/// P_l(z) for a single degree, |z| ≤ 1.
pub fn legendre_poly(l: i64, z: f64) -> Result<f64> {
    if l < 0 {
        return Err(Error::parameter(format!(
            "legendre_poly: degree must be >= 0, got {l}"
        )));
    }
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::parameter(format!(
            "legendre_poly: |z| <= 1 required, got {z}"
        )));
    }
    let all = legendre_all(l as usize, z);
    Ok(all[l as usize])
}

/// P_0(z)..P_lmax(z) in one recurrence sweep. The argument is not range
/// checked; callers on cos θ are always inside [-1, 1].
pub fn legendre_all(l_max: usize, z: f64) -> Vec<f64> {
    let mut p = vec![0.0; l_max + 1];
    p[0] = 1.0;
    if l_max == 0 {
        return p;
    }
    p[1] = z;
    for l in 1..l_max {
        let lf = l as f64;
        p[l + 1] = ((2.0 * lf + 1.0) * z * p[l] - lf * p[l - 1]) / (lf + 1.0);
    }
    p
}
