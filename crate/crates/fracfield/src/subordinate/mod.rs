//! Subordinators: Laplace exponents, Lévy-measure quadrature, and samplers
//! for S^Ψ_t and the inverse stable subordinator E^β_t.
//!
//! All samplers are reentrant and take explicit [`RngState`](crate::RngState);
//! parallel ensembles should derive per-task substreams.

pub mod exponent;
pub mod levy;
pub mod sampler;

pub use exponent::{psi_eval, LaplaceExponent, WeightedExponent};
pub use levy::psi_from_levy_quadrature;
pub use sampler::{
    sample_inverse_stable, sample_inverse_stable_first_passage, sample_one_sided_stable_unit,
    sample_stable, sample_subordinator, sample_subordinator_path, FirstPassage,
};

/// A single subordinator draw, optionally with the simulated coarse path.
#[derive(Debug, Clone)]
pub struct SubordinatorSample {
    pub t: f64,
    pub value: f64,
    pub path: Option<Vec<(f64, f64)>>,
}

impl SubordinatorSample {
    pub fn draw(spec: &LaplaceExponent, t: f64, rng: &mut crate::RngState) -> crate::Result<Self> {
        Ok(SubordinatorSample {
            t,
            value: sample_subordinator(spec, t, rng)?,
            path: None,
        })
    }

    pub fn draw_with_path(
        spec: &LaplaceExponent,
        t: f64,
        steps: usize,
        rng: &mut crate::RngState,
    ) -> crate::Result<Self> {
        let path = sample_subordinator_path(spec, t, steps, rng)?;
        let value = path.last().expect("path is nonempty").1;
        Ok(SubordinatorSample {
            t,
            value,
            path: Some(path),
        })
    }
}

/// A single inverse-stable draw E^β_t.
#[derive(Debug, Clone)]
pub struct InverseStableSample {
    pub beta: f64,
    pub t: f64,
    pub value: f64,
}

impl InverseStableSample {
    pub fn draw(beta: f64, t: f64, rng: &mut crate::RngState) -> crate::Result<Self> {
        Ok(InverseStableSample {
            beta,
            t,
            value: sample_inverse_stable(beta, t, rng)?,
        })
    }
}
