//! Special-function invariants: Mittag-Leffler bounds and oracle
//! agreement, spherical-harmonic orthonormality and addition formula,
//! Caputo quadrature order.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::rng::RngState;
use crate::specfun::{
    caputo_l1_derivative, legendre_poly, mittag_leffler, mittag_leffler_integral_oracle,
    spherical_harmonic, spherical_harmonics_all,
};

use super::SuiteReport;

pub fn run(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("specfun", seed);
    let betas = [0.3, 0.5, 0.7, 0.9];

    // 0 ≤ E_β(−x^β) ≤ 1/(1+x^β) on a log grid
    let mut worst = 0.0f64;
    let grid_n = 200;
    for &beta in &betas {
        for i in 0..grid_n {
            let x = 10f64.powf(-3.0 + 6.0 * i as f64 / (grid_n - 1) as f64);
            let v = mittag_leffler(beta, -x.powf(beta), 1e-10)?;
            let upper = 1.0 / (1.0 + x.powf(beta));
            worst = worst.max(-v).max(v - upper);
        }
    }
    report.check_upper(
        "mittag_leffler_bound_grid",
        worst,
        0.0,
        format!(
            "max violation of 0 <= E <= 1/(1+x^b) over {} points x 4 betas",
            grid_n
        ),
    );

    // E_1 = exp
    let mut worst = 0.0f64;
    for i in 0..=120 {
        let z = -30.0 * i as f64 / 120.0;
        worst = worst.max((mittag_leffler(1.0, z, 1e-13)? - z.exp()).abs());
    }
    report.check_upper("mittag_leffler_beta1_exp", worst, 1e-12, "z in [-30, 0]");

    // production branches vs the integral oracle on a 50-point grid per β
    let mut worst = 0.0f64;
    for &beta in &betas {
        for i in 0..50 {
            let z = -(0.02 + 30.0 * i as f64 / 49.0);
            let a = mittag_leffler(beta, z, 1e-10)?;
            let b = mittag_leffler_integral_oracle(beta, z, 768)?;
            worst = worst.max((a - b).abs());
        }
    }
    report.check_upper(
        "mittag_leffler_vs_integral_oracle",
        worst,
        1e-7,
        "50-point grid per beta, combined tolerance 10*max(1e-10, 1e-8)",
    );

    // Gram matrix of Y_lm, l ≤ 8, under Gauss x uniform quadrature
    let l_max = 8usize;
    let n_modes = (l_max + 1) * (l_max + 1);
    let (nodes, weights) = crate::specfun::quadrature::gauss_legendre(l_max + 1);
    let n_phi = 2 * l_max + 2;
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); n_modes]; n_modes];
    for (u, w) in nodes.iter().zip(&weights) {
        let theta = u.clamp(-1.0, 1.0).acos();
        for k in 0..n_phi {
            let phi = 2.0 * PI * k as f64 / n_phi as f64;
            let ww = w * 2.0 * PI / n_phi as f64;
            let basis = spherical_harmonics_all(l_max, theta, phi);
            for a in 0..n_modes {
                for b in a..n_modes {
                    gram[a][b] += basis[a] * basis[b].conj() * ww;
                }
            }
        }
    }
    let mut worst = 0.0f64;
    for a in 0..n_modes {
        for b in a..n_modes {
            let want = if a == b { 1.0 } else { 0.0 };
            worst = worst
                .max((gram[a][b].re - want).abs())
                .max(gram[a][b].im.abs());
        }
    }
    report.check_upper(
        "spherical_harmonic_gram_identity",
        worst,
        1e-8,
        format!("{n_modes}x{n_modes} Gram vs identity, l <= {l_max}"),
    );

    // addition formula at random point pairs
    let mut rng = RngState::stream(seed, 101);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (t1, p1) = (rng.uniform() * PI, rng.uniform() * 2.0 * PI);
        let (t2, p2) = (rng.uniform() * PI, rng.uniform() * 2.0 * PI);
        let cosang = t1.cos() * t2.cos() + t1.sin() * t2.sin() * (p1 - p2).cos();
        for l in [1i64, 4, 9, 16] {
            let mut acc = Complex64::new(0.0, 0.0);
            for m in -l..=l {
                acc += spherical_harmonic(l, m, t1, p1)? * spherical_harmonic(l, m, t2, p2)?.conj();
            }
            let want =
                (2.0 * l as f64 + 1.0) / (4.0 * PI) * legendre_poly(l, cosang.clamp(-1.0, 1.0))?;
            worst = worst.max((acc.re - want).abs()).max(acc.im.abs());
        }
    }
    report.check_upper(
        "spherical_harmonic_addition_formula",
        worst,
        1e-10,
        "100 random pairs, l in {1,4,9,16}",
    );

    // Caputo of the linear function: D^{1/2} t = 2 sqrt(t/pi)
    let dt = 1.0 / 256.0;
    let u: Vec<f64> = (0..=256).map(|i| i as f64 * dt).collect();
    let got = caputo_l1_derivative(&u, dt, 0.5, 256)?;
    report.check_upper(
        "caputo_linear_function",
        (got - 2.0 * (1.0 / PI).sqrt()).abs(),
        1e-12,
        "L1 rule is exact on piecewise-linear data",
    );

    // eigenfunction property convergence order under grid halving
    let (beta, lam) = (0.5, 1.0);
    let err_at = |n: usize| -> Result<f64> {
        let dt = 1.0 / n as f64;
        let u: Vec<f64> = (0..=n)
            .map(|i| mittag_leffler(beta, -lam * (i as f64 * dt).powf(beta), 1e-13))
            .collect::<Result<_>>()?;
        Ok((caputo_l1_derivative(&u, dt, beta, n)? + lam * u[n]).abs())
    };
    let e1 = err_at(256)?;
    let e2 = err_at(512)?;
    report.check_lower(
        "caputo_eigenfunction_order",
        (e1 / e2).log2(),
        1.4,
        format!("errors {e1:.3e} -> {e2:.3e} under halving, expected order 1.5"),
    );

    Ok(report)
}
