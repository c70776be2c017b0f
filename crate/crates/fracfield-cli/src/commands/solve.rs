//! `fracfield solve <config.json>`: deterministic spectral solves on a time
//! grid, emitting coefficient tables, a point-evaluation table on a display
//! grid, and a manifest.

use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use num_complex::Complex64;

use fracfield::manifold::{project, ManifoldPoint, SpectralBackend};
use fracfield::solver::{
    frac_space_solve, frac_time_solve, heat_solve, Problem, SolutionSnapshot, SpectralCoefficients,
};

use crate::config::{ExperimentConfig, InitialConfig};
use crate::csvio::{fmt_float, CsvWriter};
use crate::manifest::RunManifest;

pub fn initial_coefficients(
    cfg: &ExperimentConfig,
    backend: &dyn SpectralBackend,
) -> anyhow::Result<SpectralCoefficients> {
    match cfg
        .initial
        .as_ref()
        .context("config has no initial section")?
    {
        InitialConfig::SingleMode { mode } => {
            Ok(SpectralCoefficients::single_mode(backend, *mode)?)
        }
        InitialConfig::BandLimited => {
            let f: Box<dyn Fn(&ManifoldPoint) -> f64> = match cfg.backend {
                crate::config::BackendConfig::Sphere2 { .. } => Box::new(|p| {
                    let ManifoldPoint::Sphere { theta, phi } = p else {
                        unreachable!()
                    };
                    let c = theta.cos();
                    0.5 + c + 0.5 * theta.sin() * phi.cos() + 0.3 * (1.5 * c * c - 0.5)
                }),
                crate::config::BackendConfig::Torus { dim: 1, .. } => Box::new(|p| {
                    let ManifoldPoint::Torus { x, .. } = p else {
                        unreachable!()
                    };
                    0.5 + x[0].cos() + 0.3 * (2.0 * x[0]).sin()
                }),
                crate::config::BackendConfig::Torus { .. } => Box::new(|p| {
                    let ManifoldPoint::Torus { x, .. } = p else {
                        unreachable!()
                    };
                    0.5 + x[0].cos() + 0.3 * x[1].sin() + 0.2 * (x[0] + x[1]).cos()
                }),
                crate::config::BackendConfig::Interval { .. } => Box::new(|p| {
                    let ManifoldPoint::Interval { x } = p else {
                        unreachable!()
                    };
                    x.sin() + 0.3 * (2.0 * x).sin()
                }),
            };
            Ok(project(backend, &f)?)
        }
        InitialConfig::PointMass { point } => {
            let p = cfg.parse_point(point)?;
            let basis = backend.basis_at(&p)?;
            let values: Vec<Complex64> = basis.iter().map(|phi| phi.conj()).collect();
            Ok(SpectralCoefficients::new(backend.id(), values))
        }
    }
}

pub fn solve_at(
    backend: &dyn SpectralBackend,
    init: &SpectralCoefficients,
    problem: &Problem,
    t: f64,
) -> anyhow::Result<SolutionSnapshot> {
    Ok(match problem {
        Problem::Heat => heat_solve(backend, init, t)?,
        Problem::TimeFractional { beta } => frac_time_solve(backend, init, *beta, t)?,
        Problem::SpaceFractional { psi } => frac_space_solve(backend, init, psi, t)?,
    })
}

pub fn coefficients_csv(backend: &dyn SpectralBackend, snap: &SolutionSnapshot) -> CsvWriter {
    let mut w = CsvWriter::new(&["mode", "label", "eigenvalue", "coeff_re", "coeff_im", "t"]);
    for (j, v) in snap.coefficients.values().iter().enumerate() {
        w.row(&[
            j.to_string(),
            backend.mode_label(j),
            fmt_float(backend.eigenvalue(j)),
            fmt_float(v.re),
            fmt_float(v.im),
            fmt_float(snap.t),
        ]);
    }
    w
}

pub fn run(config_path: &Path) -> anyhow::Result<()> {
    let started = Instant::now();
    let config_text = std::fs::read_to_string(config_path)
        .with_context(|| format!("cannot read config {}", config_path.display()))?;
    let cfg = ExperimentConfig::parse(&config_text)?;
    if cfg.initial.is_none() {
        bail!("solve runs need an initial section");
    }
    let problem = cfg.problem()?;
    let backend = cfg.build_backend()?;
    let out_dir = super::resolve_out_dir(cfg.output_dir.as_deref());
    std::fs::create_dir_all(&out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;

    let init = initial_coefficients(&cfg, backend.as_ref())?;
    let mut manifest = RunManifest::new(
        "solve",
        &backend.id(),
        &problem.label(),
        backend.num_modes(),
        &config_text,
        cfg.seed,
    );

    let eig = super::eigen_table_csv(backend.as_ref());
    eig.write_to(&out_dir.join("eigen_table.csv"))?;
    manifest.record_file("eigen_table.csv", eig.bytes());

    let grid = super::display_grid(&cfg, backend.as_ref());
    let mut headers = super::coord_headers(&cfg);
    headers.push("t");
    headers.push("value");
    let mut points_csv = CsvWriter::new(&headers);

    let mut weak_regime = false;
    for (k, &t) in cfg.times.iter().enumerate() {
        let snap = solve_at(backend.as_ref(), &init, &problem, t)?;
        weak_regime |= snap.weak_regime;
        let w = coefficients_csv(backend.as_ref(), &snap);
        let name = format!("coefficients_{k:03}.csv");
        w.write_to(&out_dir.join(&name))?;
        manifest.record_file(&name, w.bytes());
        for p in &grid {
            let v = snap.coefficients.evaluate(backend.as_ref(), p)?;
            let mut row = super::coord_fields(p);
            row.push(fmt_float(t));
            row.push(fmt_float(v.re));
            points_csv.row(&row);
        }
    }
    points_csv.write_to(&out_dir.join("solution_points.csv"))?;
    manifest.record_file("solution_points.csv", points_csv.bytes());
    if weak_regime {
        eprintln!(
            "note: initial data failed the strong-solution regularity check; \
             the L2 spectral solution is still emitted"
        );
    }
    manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
    manifest.write_to(&out_dir.join("solve_manifest.json"))?;
    println!(
        "solve: backend {}, problem {}, {} times -> {}",
        backend.id(),
        problem.label(),
        cfg.times.len(),
        out_dir.display()
    );
    Ok(())
}
