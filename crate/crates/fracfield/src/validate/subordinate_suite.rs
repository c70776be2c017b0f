//! Subordinator invariants: Monte Carlo Laplace transforms against the
//! closed forms, Lévy quadrature agreement, path monotonicity.

use crate::error::Result;
use crate::rng::RngState;
use crate::specfun::mittag_leffler;
use crate::subordinate::{
    psi_eval, psi_from_levy_quadrature, sample_inverse_stable, sample_subordinator,
    sample_subordinator_path, LaplaceExponent,
};

use super::SuiteReport;

fn mc_laplace(
    spec: &LaplaceExponent,
    t: f64,
    xi: f64,
    n: usize,
    rng: &mut RngState,
) -> Result<(f64, f64)> {
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    for _ in 0..n {
        let v = (-xi * sample_subordinator(spec, t, rng)?).exp();
        sum += v;
        sumsq += v * v;
    }
    let mean = sum / n as f64;
    let se = ((sumsq / n as f64 - mean * mean).max(0.0) / n as f64).sqrt();
    Ok((mean, se))
}

pub fn run(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("subordinate", seed);
    let kinds = [
        LaplaceExponent::stable(0.6),
        LaplaceExponent::StableWithDrift {
            drift: 1.0,
            alpha: 0.5,
        },
        LaplaceExponent::Gamma,
        LaplaceExponent::geometric_stable(0.5),
    ];

    // Ψ(0) = 0 exactly
    let mut worst = 0.0f64;
    for k in &kinds {
        worst = worst.max(psi_eval(k, 0.0)?.abs());
    }
    report.check_upper("psi_vanishes_at_zero", worst, 0.0, "all shipped kinds");

    // E exp(−ξ S_t) = exp(−t Ψ(ξ)) within 3 SE
    let n = 30_000;
    let mut worst_sigma = 0.0f64;
    let mut rng = RngState::stream(seed, 201);
    for k in &kinds {
        for (t, xi) in [(0.5, 0.5), (1.0, 1.0), (2.0, 2.0)] {
            let (mean, se) = mc_laplace(k, t, xi, n, &mut rng)?;
            let want = (-t * psi_eval(k, xi)?).exp();
            worst_sigma = worst_sigma.max((mean - want).abs() / se);
        }
    }
    report.check_upper(
        "subordinator_laplace_mc",
        worst_sigma,
        3.0,
        format!("max z-score over 4 kinds x 3 (t, xi) combos, N = {n}"),
    );

    // inverse stable: E exp(−λ E_t) = E_β(−λ t^β)
    let mut worst_sigma = 0.0f64;
    let mut rng = RngState::stream(seed, 202);
    for beta in [0.3, 0.5, 0.7, 0.9] {
        for (t, lam) in [(0.5, 1.0), (1.0, 0.5), (2.0, 4.0)] {
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..n {
                let v = (-lam * sample_inverse_stable(beta, t, &mut rng)?).exp();
                sum += v;
                sumsq += v * v;
            }
            let mean = sum / n as f64;
            let se = ((sumsq / n as f64 - mean * mean).max(0.0) / n as f64).sqrt();
            let want = mittag_leffler(beta, -lam * t.powf(beta), 1e-12)?;
            worst_sigma = worst_sigma.max((mean - want).abs() / se);
        }
    }
    report.check_upper(
        "inverse_stable_laplace_mc",
        worst_sigma,
        3.0,
        format!("max z-score over 4 betas x 3 (t, lambda) combos, N = {n}"),
    );

    // Lévy quadrature vs closed forms
    let mut worst = 0.0f64;
    for k in [
        LaplaceExponent::stable(0.5),
        LaplaceExponent::Gamma,
        LaplaceExponent::geometric_stable(0.6),
    ] {
        for xi in [0.1, 1.0, 10.0, 100.0] {
            let q = psi_from_levy_quadrature(&k, xi, 768)?;
            let c = psi_eval(&k, xi)?;
            worst = worst.max((q - c).abs() / c.abs().max(1e-300));
        }
    }
    report.check_upper(
        "levy_quadrature_vs_closed_form",
        worst,
        1e-6,
        "relative error, xi in [0.1, 100]",
    );

    // driftless Ψ(ξ)/ξ → 0
    let mut worst = 0.0f64;
    for k in [
        LaplaceExponent::stable(0.6),
        LaplaceExponent::Gamma,
        LaplaceExponent::geometric_stable(0.5),
    ] {
        let r6 = psi_eval(&k, 1e6)? / 1e6;
        let r3 = psi_eval(&k, 1e3)? / 1e3;
        worst = worst.max(r6 / r3);
    }
    report.check_upper(
        "driftless_sublinearity",
        worst,
        0.1,
        "psi(xi)/xi at 1e6 vs 1e3",
    );

    // path monotonicity
    let mut rng = RngState::stream(seed, 203);
    let mut violations = 0usize;
    for k in &kinds {
        for _ in 0..20 {
            let path = sample_subordinator_path(k, 2.0, 200, &mut rng)?;
            if path.windows(2).any(|w| w[1].1 < w[0].1) {
                violations += 1;
            }
        }
    }
    report.check_upper(
        "paths_nondecreasing",
        violations as f64,
        0.0,
        "80 paths across all kinds",
    );

    Ok(report)
}
