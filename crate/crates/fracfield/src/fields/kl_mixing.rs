//! Karhunen-Loève synthesis against a non-eigen orthonormal system.
//!
//! When the covariance eigenfunctions ψ_i differ from the backend basis
//! φ_j, the Fourier coefficients of the field against φ are
//! c_j = Σ_i √ζ_i ω_i θ_{ji} with θ_{ji} = ⟨φ_j, ψ_i⟩ and ω_i iid standard
//! normals, so Var c_j = Σ_i ζ_i θ_{ji}² and
//! Cov(c_k, c_s) = Σ_i ζ_i θ_{ki} θ_{si}. The eigenbasis case is θ = I.

use crate::error::{Error, Result};
use crate::rng::RngState;

/// Mixing data: θ rows indexed by backend mode j, columns by KL mode i,
/// with the KL variances ζ.
#[derive(Debug, Clone)]
pub struct KlMixing {
    theta: Vec<Vec<f64>>,
    zeta: Vec<f64>,
}

impl KlMixing {
    pub fn new(theta: Vec<Vec<f64>>, zeta: Vec<f64>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::parameter("mixing matrix must be nonempty"));
        }
        for (j, row) in theta.iter().enumerate() {
            if row.len() != zeta.len() {
                return Err(Error::parameter(format!(
                    "theta row {j} has {} entries, zeta has {}",
                    row.len(),
                    zeta.len()
                )));
            }
            let sq: f64 = row.iter().map(|x| x * x).sum();
            if !sq.is_finite() {
                return Err(Error::parameter(format!(
                    "theta row {j} is not square-summable"
                )));
            }
        }
        if zeta.iter().any(|z| !(*z >= 0.0)) {
            return Err(Error::parameter("KL variances must be >= 0"));
        }
        Ok(KlMixing { theta, zeta })
    }

    /// θ = I with the given variances: the eigenbasis case.
    pub fn identity(zeta: Vec<f64>) -> Result<Self> {
        let n = zeta.len();
        let theta = (0..n)
            .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(theta, zeta)
    }

    /// Random orthogonal mixing of dimension n: modified Gram-Schmidt of a
    /// Gaussian matrix drawn from `rng`.
    pub fn random_orthogonal(n: usize, zeta: Vec<f64>, rng: &mut RngState) -> Result<Self> {
        if zeta.len() != n {
            return Err(Error::parameter("zeta length must match the dimension"));
        }
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.standard_normal()).collect())
            .collect();
        for i in 0..n {
            for k in 0..i {
                let dot: f64 = (0..n).map(|r| cols[i][r] * cols[k][r]).sum();
                for r in 0..n {
                    cols[i][r] -= dot * cols[k][r];
                }
            }
            let norm: f64 = cols[i].iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-12 {
                return Err(Error::numerical("degenerate Gram-Schmidt column", norm));
            }
            for r in 0..n {
                cols[i][r] /= norm;
            }
        }
        // θ_{ji} = ⟨φ_j, ψ_i⟩: column i of the orthogonal matrix is ψ_i in
        // the φ basis
        let theta = (0..n)
            .map(|j| (0..n).map(|i| cols[i][j]).collect())
            .collect();
        Self::new(theta, zeta)
    }

    pub fn dim(&self) -> (usize, usize) {
        (self.theta.len(), self.zeta.len())
    }

    /// Draw c_j = Σ_i √ζ_i ω_i θ_{ji}.
    pub fn synthesize_coefficients(&self, rng: &mut RngState) -> Vec<f64> {
        let omega: Vec<f64> = self
            .zeta
            .iter()
            .map(|z| z.sqrt() * rng.standard_normal())
            .collect();
        self.theta
            .iter()
            .map(|row| row.iter().zip(&omega).map(|(th, w)| th * w).sum())
            .collect()
    }

    /// Var c_j = Σ_i ζ_i θ_{ji}².
    pub fn coefficient_variance(&self, j: usize) -> f64 {
        self.theta[j]
            .iter()
            .zip(&self.zeta)
            .map(|(th, z)| z * th * th)
            .sum()
    }

    /// Cov(c_k, c_s) = Σ_i ζ_i θ_{ki} θ_{si}.
    pub fn coefficient_covariance(&self, k: usize, s: usize) -> f64 {
        self.theta[k]
            .iter()
            .zip(&self.theta[s])
            .zip(&self.zeta)
            .map(|((a, b), z)| z * a * b)
            .sum()
    }
}
