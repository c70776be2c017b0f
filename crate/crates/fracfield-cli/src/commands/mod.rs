pub mod field;
pub mod solve;
pub mod validate;

use std::path::PathBuf;

use fracfield::manifold::{ManifoldPoint, SpectralBackend};

use crate::config::ExperimentConfig;

/// Output directory resolution: FRACFIELD_OUT beats the config/flag value,
/// which beats "out".
pub fn resolve_out_dir(configured: Option<&str>) -> PathBuf {
    if let Ok(env) = std::env::var("FRACFIELD_OUT") {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from(configured.unwrap_or("out"))
}

/// Fixed display grid per backend for point-evaluation tables.
pub fn display_grid(cfg: &ExperimentConfig, backend: &dyn SpectralBackend) -> Vec<ManifoldPoint> {
    use crate::config::BackendConfig;
    let _ = backend;
    match cfg.backend {
        BackendConfig::Sphere2 { .. } => {
            let (nt, np) = (17usize, 32usize);
            let mut pts = Vec::with_capacity(nt * np);
            for i in 0..nt {
                let theta = std::f64::consts::PI * (i as f64 + 0.5) / nt as f64;
                for j in 0..np {
                    let phi = 2.0 * std::f64::consts::PI * j as f64 / np as f64;
                    pts.push(ManifoldPoint::Sphere { theta, phi });
                }
            }
            pts
        }
        BackendConfig::Torus { dim: 1, .. } => (0..64)
            .map(|i| {
                ManifoldPoint::torus1(
                    -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / 64.0,
                )
            })
            .collect(),
        BackendConfig::Torus { .. } => {
            let n = 24usize;
            let mut pts = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let h = 2.0 * std::f64::consts::PI / n as f64;
                    pts.push(ManifoldPoint::torus2(
                        -std::f64::consts::PI + i as f64 * h,
                        -std::f64::consts::PI + j as f64 * h,
                    ));
                }
            }
            pts
        }
        BackendConfig::Interval { .. } => (1..64)
            .map(|i| ManifoldPoint::Interval {
                x: std::f64::consts::PI * i as f64 / 64.0,
            })
            .collect(),
    }
}

/// Eigen table: index, mode label, eigenvalue, multiplicity.
pub fn eigen_table_csv(backend: &dyn SpectralBackend) -> crate::csvio::CsvWriter {
    use crate::csvio::fmt_float;
    let mut w = crate::csvio::CsvWriter::new(&["index", "label", "eigenvalue", "multiplicity"]);
    for j in 0..backend.num_modes() {
        w.row(&[
            j.to_string(),
            backend.mode_label(j),
            fmt_float(backend.eigenvalue(j)),
            backend.multiplicity(j).to_string(),
        ]);
    }
    w
}

/// Coordinate column headers of the display grid.
pub fn coord_headers(cfg: &ExperimentConfig) -> Vec<&'static str> {
    use crate::config::BackendConfig;
    match cfg.backend {
        BackendConfig::Sphere2 { .. } => vec!["theta", "phi"],
        BackendConfig::Torus { dim: 1, .. } => vec!["x"],
        BackendConfig::Torus { .. } => vec!["x1", "x2"],
        BackendConfig::Interval { .. } => vec!["x"],
    }
}

pub fn coord_fields(p: &ManifoldPoint) -> Vec<String> {
    use crate::csvio::fmt_float;
    match p {
        ManifoldPoint::Sphere { theta, phi } => vec![fmt_float(*theta), fmt_float(*phi)],
        ManifoldPoint::Torus { x, dim } => x.iter().take(*dim).map(|v| fmt_float(*v)).collect(),
        ManifoldPoint::Interval { x } => vec![fmt_float(*x)],
    }
}
