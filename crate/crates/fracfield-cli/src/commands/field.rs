//! `fracfield field <config.json>`: synthesize a random field, evolve it
//! over the time grid, and tabulate an ensemble's empirical spectrum
//! against the model damping factors.

use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};

use fracfield::fields::{
    ensemble_evolved_spectrum, evolve, synthesize, EvolutionLaw, PowerSpectrum,
};
use fracfield::manifold::SpectralBackend;
use fracfield::solver::Problem;
use fracfield::subordinate::LaplaceExponent;
use fracfield::RngState;

use crate::config::ExperimentConfig;
use crate::csvio::{fmt_float, CsvWriter};
use crate::manifest::RunManifest;

/// The evolution law of a field run: the heat problem is the drift
/// degeneration of the subordinate law.
fn law_of(problem: &Problem) -> EvolutionLaw {
    match problem {
        Problem::Heat => EvolutionLaw::Subordinate(LaplaceExponent::pure_drift(1.0)),
        Problem::TimeFractional { beta } => EvolutionLaw::TimeFractional { beta: *beta },
        Problem::SpaceFractional { psi } => EvolutionLaw::Subordinate(psi.clone()),
    }
}

pub fn build_spectrum(
    cfg: &ExperimentConfig,
    backend: &dyn SpectralBackend,
) -> anyhow::Result<PowerSpectrum> {
    let s = cfg
        .spectrum
        .as_ref()
        .context("field runs need a spectrum section")?;
    Ok(match s.form.as_str() {
        "band" => PowerSpectrum::parametric_band(backend, s.amplitude, s.gamma)?,
        "weyl" => PowerSpectrum::parametric_weyl(backend, s.amplitude, s.gamma)?,
        other => bail!("unknown spectrum form {other:?}"),
    })
}

pub fn run(config_path: &Path) -> anyhow::Result<()> {
    let started = Instant::now();
    let config_text = std::fs::read_to_string(config_path)
        .with_context(|| format!("cannot read config {}", config_path.display()))?;
    let cfg = ExperimentConfig::parse(&config_text)?;
    let backend = cfg.build_backend()?;
    let spectrum = build_spectrum(&cfg, backend.as_ref())?;
    let law = law_of(&cfg.problem()?);
    let out_dir = super::resolve_out_dir(cfg.output_dir.as_deref());
    std::fs::create_dir_all(&out_dir)?;
    let mut manifest = RunManifest::new(
        "field",
        &backend.id(),
        &law.label(),
        backend.num_modes(),
        &config_text,
        cfg.seed,
    );

    let eig = super::eigen_table_csv(backend.as_ref());
    eig.write_to(&out_dir.join("eigen_table.csv"))?;
    manifest.record_file("eigen_table.csv", eig.bytes());

    // one base realization on stream 0, evolved across the time grid
    let mut rng = RngState::from_seed(cfg.seed);
    let field = synthesize(backend.as_ref(), &spectrum, &mut rng)?;
    let grid = super::display_grid(&cfg, backend.as_ref());
    for (k, &t) in cfg.times.iter().enumerate() {
        let mut headers = super::coord_headers(&cfg);
        headers.push("t");
        headers.push("value");
        let mut w = CsvWriter::new(&headers);
        let evolved = evolve(backend.as_ref(), &field, &law, t)?;
        for p in &grid {
            let v = evolved.evaluate(backend.as_ref(), p)?;
            let mut row = super::coord_fields(p);
            row.push(fmt_float(t));
            row.push(fmt_float(v.re));
            w.row(&row);
        }
        let name = format!("field_{k:03}.csv");
        w.write_to(&out_dir.join(&name))?;
        manifest.record_file(&name, w.bytes());
    }

    // ensemble spectrum at the last requested time
    let t_star = cfg.times.iter().cloned().fold(0.0f64, f64::max);
    let realizations = cfg
        .spectrum
        .as_ref()
        .map(|s| s.realizations)
        .unwrap_or(1000);
    let ensemble_rng = RngState::stream(cfg.seed, 1);
    let (empirical, model) = ensemble_evolved_spectrum(
        backend.as_ref(),
        &spectrum,
        &law,
        t_star,
        realizations,
        &ensemble_rng,
    )?;
    let mut w = CsvWriter::new(&[
        "mode",
        "label",
        "eigenvalue",
        "c",
        "model",
        "empirical",
        "std_error",
        "z",
        "within_3se",
    ]);
    for j in 0..backend.num_modes() {
        let e = &empirical[j];
        let z = if e.std_error > 0.0 {
            (e.mean_sq - model[j]).abs() / e.std_error
        } else {
            0.0
        };
        w.row(&[
            j.to_string(),
            backend.mode_label(j),
            fmt_float(backend.eigenvalue(j)),
            fmt_float(spectrum.value(j)),
            fmt_float(model[j]),
            fmt_float(e.mean_sq),
            fmt_float(e.std_error),
            fmt_float(z),
            (if z <= 3.0 { 1 } else { 0 }).to_string(),
        ]);
    }
    w.write_to(&out_dir.join("spectrum.csv"))?;
    manifest.record_file("spectrum.csv", w.bytes());

    manifest.wall_clock_seconds = started.elapsed().as_secs_f64();
    manifest.write_to(&out_dir.join("field_manifest.json"))?;
    println!(
        "field: backend {}, law {}, {} realizations at t = {} -> {}",
        backend.id(),
        law.label(),
        realizations,
        t_star,
        out_dir.display()
    );
    Ok(())
}
