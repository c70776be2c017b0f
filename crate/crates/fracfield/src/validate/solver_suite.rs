//! Solver invariants: degenerations, semigroup laws (and the failure of
//! one for fractional time), Monte Carlo stochastic representations,
//! long-time limits, residual orders.

use num_complex::Complex64;

use crate::error::Result;
use crate::manifold::{project, IntervalDirichlet, ManifoldPoint, SpectralBackend, Sphere2, Torus};
use crate::rng::RngState;
use crate::solver::{
    frac_space_solve, frac_time_solve, heat_solve, pde_residual, stochastic_representation,
    Problem, SpectralCoefficients,
};
use crate::specfun::mode_index;
use crate::subordinate::LaplaceExponent;

use super::SuiteReport;

fn sphere_init(s: &Sphere2) -> SpectralCoefficients {
    let mut c = SpectralCoefficients::zero(s);
    c.values_mut()[mode_index(0, 0)] = Complex64::new(0.4, 0.0);
    c.values_mut()[mode_index(1, 0)] = Complex64::new(1.0, 0.0);
    c.values_mut()[mode_index(2, 1)] = Complex64::new(0.25, 0.15);
    c.values_mut()[mode_index(2, -1)] = Complex64::new(-0.25, 0.15);
    c
}

fn max_coeff_gap(a: &SpectralCoefficients, b: &SpectralCoefficients) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn run(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("solver", seed);
    let sphere = Sphere2::new(8)?;
    let init = sphere_init(&sphere);

    // β = 1 reduces to the heat solve
    let a = frac_time_solve(&sphere, &init, 1.0, 0.7)?;
    let h = heat_solve(&sphere, &init, 0.7)?;
    report.check_upper(
        "beta_one_reduction",
        max_coeff_gap(&a.coefficients, &h.coefficients),
        1e-12,
        "coefficientwise",
    );

    // pure drift reduces to the heat solve at shifted time
    let d = frac_space_solve(&sphere, &init, &LaplaceExponent::pure_drift(1.0), 0.7)?;
    report.check_upper(
        "pure_drift_reduction",
        max_coeff_gap(&d.coefficients, &h.coefficients),
        1e-12,
        "psi(xi) = xi against heat at the same time",
    );

    // semigroup property (heat / space-fractional) and its failure for
    // fractional time
    let psi = LaplaceExponent::geometric_stable(0.6);
    let once = frac_space_solve(&sphere, &init, &psi, 1.3)?;
    let twice = frac_space_solve(
        &sphere,
        &frac_space_solve(&sphere, &init, &psi, 0.4)?.coefficients,
        &psi,
        0.9,
    )?;
    report.check_upper(
        "space_fractional_semigroup",
        max_coeff_gap(&once.coefficients, &twice.coefficients),
        1e-12,
        "e^{-(t+s)psi} factorizes",
    );
    let j = mode_index(1, 0);
    let unit = SpectralCoefficients::single_mode(&sphere, j)?;
    let beta = 0.5;
    let direct = frac_time_solve(&sphere, &unit, beta, 2.0)?;
    let composed = frac_time_solve(
        &sphere,
        &frac_time_solve(&sphere, &unit, beta, 1.0)?.coefficients,
        beta,
        1.0,
    )?;
    report.check_lower(
        "time_fractional_not_a_semigroup",
        (direct.coefficients.values()[j].re - composed.coefficients.values()[j].re).abs(),
        1e-3,
        "composition gap on the lambda = 2 mode must stay visible",
    );

    // stochastic representations on all three backends
    let rng = RngState::stream(seed, 411);
    let mut worst_sigma = 0.0f64;
    let n_paths = 8000;
    {
        let backend = Sphere2::new(6)?;
        let init = {
            let mut c = SpectralCoefficients::zero(&backend);
            c.values_mut()[mode_index(0, 0)] = Complex64::new(0.4, 0.0);
            c.values_mut()[mode_index(1, 0)] = Complex64::new(1.0, 0.0);
            c.values_mut()[mode_index(2, 1)] = Complex64::new(0.25, 0.15);
            c.values_mut()[mode_index(2, -1)] = Complex64::new(-0.25, 0.15);
            c
        };
        let probes = [
            ManifoldPoint::sphere(1.0, 0.5)?,
            ManifoldPoint::sphere(2.2, 3.9)?,
        ];
        worst_sigma = worst_sigma.max(rep_check(&backend, &init, &probes, 0.4, n_paths, &rng)?);
    }
    {
        let backend = Torus::new(1, 16)?;
        let init = project(&backend, &|p: &ManifoldPoint| {
            let ManifoldPoint::Torus { x, .. } = p else {
                unreachable!()
            };
            x[0].cos() + 0.3 * (2.0 * x[0]).sin()
        })?;
        let probes = [ManifoldPoint::torus1(0.0), ManifoldPoint::torus1(2.0)];
        worst_sigma = worst_sigma.max(rep_check(&backend, &init, &probes, 0.4, n_paths, &rng)?);
    }
    {
        let backend = IntervalDirichlet::new(48)?;
        let init = project(&backend, &|p: &ManifoldPoint| {
            let ManifoldPoint::Interval { x } = p else {
                unreachable!()
            };
            x.sin() + 0.3 * (2.0 * x).sin()
        })?;
        let probes = [ManifoldPoint::interval(1.0)?, ManifoldPoint::interval(2.2)?];
        worst_sigma = worst_sigma.max(rep_check(&backend, &init, &probes, 0.4, n_paths, &rng)?);
    }
    report.check_upper(
        "stochastic_representation_mc",
        worst_sigma,
        3.0,
        format!("max z-score, 3 backends x 3 problems x 2 probes, N = {n_paths}"),
    );

    // long-time limits
    let heat_tail = heat_solve(&sphere, &init, 50.0)?
        .coefficients
        .nonconstant_energy(&sphere)?;
    let sub_tail = frac_space_solve(&sphere, &init, &LaplaceExponent::stable(0.5), 50.0)?
        .coefficients
        .nonconstant_energy(&sphere)?;
    report.check_upper(
        "long_time_constant_limit",
        heat_tail.max(sub_tail),
        1e-8,
        "nonconstant energy at t = 50",
    );
    let beta = 0.5;
    let t = 50.0f64;
    let frac_tail = frac_time_solve(&sphere, &init, beta, t)?
        .coefficients
        .nonconstant_energy(&sphere)?
        .sqrt();
    let envelope =
        2.0 / (crate::specfun::gamma::gamma(1.0 - beta) * t.powf(beta) * 2.0) * init.l2_norm();
    report.check_upper(
        "time_fractional_decay_envelope",
        frac_tail,
        envelope,
        "nonconstant L2 mass under the asymptotic envelope",
    );

    // Dirichlet decay rate
    let interval = IntervalDirichlet::new(32)?;
    let iv_init = project(&interval, &|p: &ManifoldPoint| {
        let ManifoldPoint::Interval { x } = p else {
            unreachable!()
        };
        x.sin() + 0.4 * (2.0 * x).sin() + 0.1 * (3.0 * x).sin()
    })?;
    let n2 = heat_solve(&interval, &iv_init, 2.0)?.coefficients.l2_norm();
    let n4 = heat_solve(&interval, &iv_init, 4.0)?.coefficients.l2_norm();
    let slope = (n4.ln() - n2.ln()) / 2.0;
    report.check_upper(
        "dirichlet_principal_decay",
        (slope + 1.0).abs(),
        0.02,
        "log-norm slope vs -lambda_1 = -1",
    );

    // residual orders under grid halving
    let probes = [
        ManifoldPoint::sphere(0.8, 0.4)?,
        ManifoldPoint::sphere(2.0, 2.2)?,
    ];
    let res_heat = |steps: usize| -> Result<f64> {
        let dt = 0.5 / steps as f64;
        let snaps: Vec<_> = (0..=steps)
            .map(|k| heat_solve(&sphere, &init, k as f64 * dt))
            .collect::<Result<_>>()?;
        pde_residual(&sphere, &snaps, &Problem::Heat, &probes)
    };
    let (r1, r2) = (res_heat(32)?, res_heat(64)?);
    report.check_lower(
        "heat_residual_euler_order",
        (r1 / r2).log2(),
        0.8,
        format!("forward-difference residual {r1:.3e} -> {r2:.3e}"),
    );
    let res_frac = |steps: usize| -> Result<f64> {
        let dt = 1.0 / steps as f64;
        let snaps: Vec<_> = (0..=steps)
            .map(|k| frac_time_solve(&sphere, &init, 0.5, k as f64 * dt))
            .collect::<Result<_>>()?;
        pde_residual(
            &sphere,
            &snaps,
            &Problem::TimeFractional { beta: 0.5 },
            &probes,
        )
    };
    let (r1, r2) = (res_frac(64)?, res_frac(128)?);
    report.check_lower(
        "fractional_residual_l1_order",
        (r1 / r2).log2(),
        0.9,
        format!("L1 residual {r1:.3e} -> {r2:.3e}"),
    );

    Ok(report)
}

fn rep_check(
    backend: &dyn SpectralBackend,
    init: &SpectralCoefficients,
    probes: &[ManifoldPoint],
    t: f64,
    paths: usize,
    rng: &RngState,
) -> Result<f64> {
    let problems = [
        Problem::Heat,
        Problem::TimeFractional { beta: 0.5 },
        Problem::SpaceFractional {
            psi: LaplaceExponent::stable(0.5),
        },
    ];
    let mut worst = 0.0f64;
    for (pi, problem) in problems.iter().enumerate() {
        let spectral_snap = match problem {
            Problem::Heat => heat_solve(backend, init, t)?,
            Problem::TimeFractional { beta } => frac_time_solve(backend, init, *beta, t)?,
            Problem::SpaceFractional { psi } => frac_space_solve(backend, init, psi, t)?,
        };
        for (qi, probe) in probes.iter().enumerate() {
            let want = spectral_snap.coefficients.evaluate(backend, probe)?.re;
            let est = stochastic_representation(
                backend,
                init,
                problem,
                probe,
                t,
                paths,
                20,
                &rng.substream((pi * 16 + qi) as u64),
            )?;
            worst = worst.max(est.sigmas_from(want));
        }
    }
    Ok(worst)
}
