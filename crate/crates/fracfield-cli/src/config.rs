//! The experiment configuration schema (versioned JSON).
//!
//! Unknown keys are rejected, all numeric ranges are validated on load,
//! and seeds are mandatory: a config plus the binary version pins every
//! output byte.

use anyhow::bail;
use serde::{Deserialize, Serialize};

use fracfield::manifold::{IntervalDirichlet, ManifoldPoint, SpectralBackend, Sphere2, Torus};
use fracfield::solver::Problem;
use fracfield::subordinate::LaplaceExponent;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub seed: u64,
    pub backend: BackendConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumConfig>,
    pub times: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarloConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum BackendConfig {
    Sphere2 {
        l_max: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        n_theta: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        n_phi: Option<usize>,
    },
    Torus {
        dim: usize,
        k_max: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        grid: Option<usize>,
    },
    Interval {
        j_max: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        quad_nodes: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemConfig {
    Heat,
    TimeFractional { beta: f64 },
    SpaceFractional { psi: LaplaceExponent },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialConfig {
    /// Unit coefficient on one mode of the enumeration.
    SingleMode { mode: usize },
    /// A fixed low-band polynomial preset (see the README for the closed
    /// forms per backend).
    BandLimited,
    /// Projection of a point mass at the given coordinates.
    PointMass { point: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    pub amplitude: f64,
    pub gamma: f64,
    /// "band": C = A(1+band rank)^-gamma (per-degree on the sphere);
    /// "weyl": C = A(1+band start index)^-gamma.
    #[serde(default = "default_form")]
    pub form: String,
    /// Ensemble size for the empirical-vs-model spectrum table.
    #[serde(default = "default_realizations")]
    pub realizations: usize,
}

fn default_form() -> String {
    "band".to_string()
}

fn default_realizations() -> usize {
    1000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloConfig {
    pub paths: usize,
    #[serde(default = "default_steps")]
    pub steps_per_unit: usize,
}

fn default_steps() -> usize {
    20
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut de = serde_json::Deserializer::from_str(text);
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(&mut de)
            .map_err(|e| anyhow::anyhow!("config field `{}`: {}", e.path(), e.inner()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            bail!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            );
        }
        if self.times.is_empty() {
            bail!("times must contain at least one entry");
        }
        if self.times.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) {
            bail!("times must be finite and >= 0");
        }
        match &self.backend {
            BackendConfig::Sphere2 { l_max, .. } if *l_max == 0 => bail!("l_max must be >= 1"),
            BackendConfig::Torus { dim, k_max, .. } => {
                if !(*dim == 1 || *dim == 2) {
                    bail!("torus dim must be 1 or 2, got {dim}");
                }
                if *k_max == 0 {
                    bail!("k_max must be >= 1");
                }
            }
            BackendConfig::Interval { j_max, .. } if *j_max == 0 => bail!("j_max must be >= 1"),
            _ => {}
        }
        if let Some(ProblemConfig::TimeFractional { beta }) = &self.problem {
            if !(*beta > 0.0 && *beta <= 1.0) {
                bail!("beta must be in (0, 1], got {beta}");
            }
        }
        if let Some(ProblemConfig::SpaceFractional { psi }) = &self.problem {
            psi.validate().map_err(|e| anyhow::anyhow!("psi: {e}"))?;
        }
        if let Some(s) = &self.spectrum {
            if !(s.gamma > 2.0) {
                bail!("spectrum gamma must exceed 2, got {}", s.gamma);
            }
            if !(s.amplitude >= 0.0) {
                bail!("spectrum amplitude must be >= 0");
            }
            if s.form != "band" && s.form != "weyl" {
                bail!(
                    "spectrum form must be \"band\" or \"weyl\", got {:?}",
                    s.form
                );
            }
            if s.realizations == 0 {
                bail!("spectrum realizations must be >= 1");
            }
        }
        if let Some(mc) = &self.monte_carlo {
            if mc.paths == 0 {
                bail!("monte_carlo paths must be >= 1");
            }
            if mc.steps_per_unit == 0 {
                bail!("monte_carlo steps_per_unit must be >= 1");
            }
        }
        Ok(())
    }

    pub fn build_backend(&self) -> anyhow::Result<Box<dyn SpectralBackend>> {
        Ok(match &self.backend {
            BackendConfig::Sphere2 {
                l_max,
                n_theta,
                n_phi,
            } => {
                let nt = n_theta.unwrap_or(l_max + 1);
                let np = n_phi.unwrap_or(2 * l_max + 2);
                Box::new(Sphere2::with_quadrature(*l_max, nt, np)?)
            }
            BackendConfig::Torus { dim, k_max, grid } => {
                let g = grid.unwrap_or(2 * k_max + 2);
                Box::new(Torus::with_grid(*dim, *k_max, g)?)
            }
            BackendConfig::Interval { j_max, quad_nodes } => {
                let q = quad_nodes.unwrap_or((2 * j_max).max(256));
                Box::new(IntervalDirichlet::with_quadrature(*j_max, q)?)
            }
        })
    }

    pub fn problem(&self) -> anyhow::Result<Problem> {
        match &self.problem {
            Some(ProblemConfig::Heat) => Ok(Problem::Heat),
            Some(ProblemConfig::TimeFractional { beta }) => {
                Ok(Problem::TimeFractional { beta: *beta })
            }
            Some(ProblemConfig::SpaceFractional { psi }) => {
                Ok(Problem::SpaceFractional { psi: psi.clone() })
            }
            None => bail!("config has no problem section"),
        }
    }

    pub fn parse_point(&self, coords: &[f64]) -> anyhow::Result<ManifoldPoint> {
        Ok(match &self.backend {
            BackendConfig::Sphere2 { .. } => {
                if coords.len() != 2 {
                    bail!("sphere points take [theta, phi]");
                }
                ManifoldPoint::sphere(coords[0], coords[1])?
            }
            BackendConfig::Torus { dim, .. } => {
                if coords.len() != *dim {
                    bail!("torus points take {dim} coordinates");
                }
                if *dim == 1 {
                    ManifoldPoint::torus1(coords[0])
                } else {
                    ManifoldPoint::torus2(coords[0], coords[1])
                }
            }
            BackendConfig::Interval { .. } => {
                if coords.len() != 1 {
                    bail!("interval points take [x]");
                }
                ManifoldPoint::interval(coords[0])?
            }
        })
    }
}
