//! Backend invariants: Chapman-Kolmogorov, dual kernel representations,
//! kernel mass and positivity, orthonormality, Weyl ratios, transition
//! sampler laws.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::manifold::{
    weyl_diagnostic, IntervalDirichlet, ManifoldPoint, SpectralBackend, Sphere2, Torus,
};
use crate::rng::RngState;

use super::SuiteReport;

/// max |∫ p(x,z,t) p(z,y,s) dμ(z) − p(x,y,t+s)| over the given pairs.
fn chapman_kolmogorov(
    backend: &dyn SpectralBackend,
    pairs: &[(ManifoldPoint, ManifoldPoint)],
    t: f64,
    s: f64,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for (x, y) in pairs {
        let mut acc = 0.0;
        for (z, w) in backend.quadrature() {
            acc += backend.heat_kernel(x, z, t)?.value * backend.heat_kernel(z, y, s)?.value * w;
        }
        let direct = backend.heat_kernel(x, y, t + s)?.value;
        worst = worst.max((acc - direct).abs());
    }
    Ok(worst)
}

/// Two-sample Kolmogorov-Smirnov distance.
fn ks_two_sample(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    d
}

pub fn run(seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("manifold", seed);

    let sphere = Sphere2::new(16)?;
    let torus1 = Torus::new(1, 32)?;
    let interval = IntervalDirichlet::new(64)?;

    // Chapman-Kolmogorov under quadrature
    let sphere_pairs = [
        (
            ManifoldPoint::sphere(0.6, 1.0)?,
            ManifoldPoint::sphere(1.9, 4.2)?,
        ),
        (
            ManifoldPoint::sphere(2.8, 0.1)?,
            ManifoldPoint::sphere(2.8, 0.1)?,
        ),
    ];
    report.check_upper(
        "chapman_kolmogorov_sphere",
        chapman_kolmogorov(&sphere, &sphere_pairs, 0.3, 0.5)?,
        1e-6,
        "l <= 16, t = 0.3, s = 0.5",
    );
    let t1_pairs = [
        (ManifoldPoint::torus1(0.4), ManifoldPoint::torus1(-2.0)),
        (ManifoldPoint::torus1(3.0), ManifoldPoint::torus1(3.0)),
    ];
    report.check_upper(
        "chapman_kolmogorov_torus1",
        chapman_kolmogorov(&torus1, &t1_pairs, 0.2, 0.4)?,
        1e-6,
        "k <= 32",
    );
    let iv_pairs = [
        (ManifoldPoint::interval(0.8)?, ManifoldPoint::interval(2.0)?),
        (ManifoldPoint::interval(1.5)?, ManifoldPoint::interval(1.5)?),
    ];
    report.check_upper(
        "chapman_kolmogorov_interval",
        chapman_kolmogorov(&interval, &iv_pairs, 0.15, 0.25)?,
        1e-6,
        "j <= 64",
    );

    // kernel symmetry on random pairs
    let mut rng = RngState::stream(seed, 301);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = ManifoldPoint::sphere(rng.uniform() * PI, rng.uniform() * 2.0 * PI)?;
        let y = ManifoldPoint::sphere(rng.uniform() * PI, rng.uniform() * 2.0 * PI)?;
        let a = sphere.heat_kernel(&x, &y, 0.4)?.value;
        let b = sphere.heat_kernel(&y, &x, 0.4)?.value;
        worst = worst.max((a - b).abs());
    }
    report.check_upper("kernel_symmetry_sphere", worst, 1e-14, "20 random pairs");

    // torus eigen-sum vs wrapped-Gaussian image sum
    let mut worst = 0.0f64;
    let x = ManifoldPoint::torus1(1.0);
    let y = ManifoldPoint::torus1(0.0);
    for i in 0..20 {
        let t = 0.1 + 1.9 * i as f64 / 19.0;
        let eig = torus1.heat_kernel(&x, &y, t)?.value;
        let img = torus1.heat_kernel_images(&x, &y, t)?;
        worst = worst.max((eig - img).abs());
    }
    // a finer truncation than the quadrature backend so the eigen-sum
    // itself is converged at t = 0.1
    let torus2_fine = Torus::new(2, 24)?;
    let x2 = ManifoldPoint::torus2(1.0, -0.5);
    let y2 = ManifoldPoint::torus2(-2.0, 0.7);
    for t in [0.1, 0.6, 2.0] {
        let eig = torus2_fine.heat_kernel(&x2, &y2, t)?.value;
        let img = torus2_fine.heat_kernel_images(&x2, &y2, t)?;
        worst = worst.max((eig - img).abs());
    }
    report.check_upper(
        "torus_kernel_dual_representations",
        worst,
        1e-12,
        "t in [0.1, 2], both dimensions",
    );

    // sphere kernel mass
    let x = ManifoldPoint::sphere(0.9, 2.0)?;
    let mut worst = 0.0f64;
    for t in [0.05, 0.3, 1.0] {
        let mut mass = 0.0;
        for (y, w) in sphere.quadrature() {
            mass += sphere.heat_kernel(&x, y, t)?.value * w;
        }
        worst = worst.max((mass - 1.0).abs());
    }
    report.check_upper("sphere_kernel_mass", worst, 1e-8, "t in {0.05, 0.3, 1}");

    // killed kernel positivity
    let mut worst = 0.0f64;
    for t in [0.01, 0.05, 0.5] {
        for (y, _) in interval.quadrature() {
            let x = ManifoldPoint::interval(0.7)?;
            worst = worst.max(-interval.heat_kernel(&x, y, t)?.value);
        }
    }
    report.check_upper(
        "killed_kernel_positivity",
        worst,
        1e-10,
        "most negative value across the grid, t >= 0.01",
    );

    // orthonormality Gram per backend
    for (name, backend, n_check) in [
        ("sphere", &sphere as &dyn SpectralBackend, 81usize),
        ("torus1", &torus1 as &dyn SpectralBackend, 17),
        ("interval", &interval as &dyn SpectralBackend, 16),
    ] {
        let mut worst = 0.0f64;
        let mut gram = vec![vec![Complex64::new(0.0, 0.0); n_check]; n_check];
        for (p, w) in backend.quadrature() {
            let basis = backend.basis_at(p)?;
            for a in 0..n_check {
                for b in a..n_check {
                    gram[a][b] += basis[a] * basis[b].conj() * *w;
                }
            }
        }
        for a in 0..n_check {
            for b in a..n_check {
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst
                    .max((gram[a][b].re - want).abs())
                    .max(gram[a][b].im.abs());
            }
        }
        report.check_upper(
            &format!("gram_identity_{name}"),
            worst,
            1e-8,
            format!("first {n_check} modes"),
        );
    }

    // Weyl ratios
    let w = weyl_diagnostic(&sphere, 200)?;
    report.check_upper(
        "weyl_ratio_sphere",
        (w.ratios[199] - 1.0).abs(),
        0.2,
        "k = 200 on the sphere",
    );
    let w = weyl_diagnostic(&interval, 64)?;
    let worst = w
        .ratios
        .iter()
        .map(|r| (r - 1.0).abs())
        .fold(0.0f64, f64::max);
    report.check_upper("weyl_ratio_interval", worst, 1e-12, "exact in 1d Dirichlet");
    let torus_big = Torus::new(2, 16)?;
    let w = weyl_diagnostic(&torus_big, 500)?;
    report.check_upper(
        "weyl_ratio_torus2",
        (w.ratios[499] - 1.0).abs(),
        0.2,
        "k = 500 lattice count",
    );

    // transition sampler: one dt step vs two dt/2 steps (KS, 1% level)
    let mut rng = RngState::stream(seed, 302);
    let n = 20_000usize;
    let from = ManifoldPoint::sphere(1.1, 0.4)?;
    let dt = 0.3;
    let mut one = Vec::with_capacity(n);
    let mut two = Vec::with_capacity(n);
    for _ in 0..n {
        let a = sphere.sample_transition(&from, dt, &mut rng)?.point;
        one.push(crate::manifold::sphere_angle(&from, &a)?.cos());
        let mid = sphere.sample_transition(&from, dt / 2.0, &mut rng)?.point;
        let b = sphere.sample_transition(&mid, dt / 2.0, &mut rng)?.point;
        two.push(crate::manifold::sphere_angle(&from, &b)?.cos());
    }
    let d = ks_two_sample(one, two);
    let crit = 1.628 * ((n + n) as f64 / (n * n) as f64).sqrt();
    report.check_upper(
        "sphere_transition_two_step_ks",
        d,
        crit,
        format!("two-sample KS at the 1% level, N = {n}"),
    );

    // sampler against the analytic angle CDF (one-sample KS, 1% level)
    let mut rng = RngState::stream(seed, 303);
    let mut angles: Vec<f64> = (0..n)
        .map(|_| sphere.sample_geodesic_angle(dt, &mut rng))
        .collect::<Result<_>>()?;
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // transform by the CDF and compare with the uniform
    let terms = ((40.0 / dt).sqrt().ceil() as usize).clamp(8, 20000);
    let mut d = 0.0f64;
    for (i, psi) in angles.iter().enumerate() {
        let f = {
            let c = psi.cos();
            let p = crate::specfun::legendre_all(terms + 1, c);
            let mut f = 0.5 * (1.0 - c);
            for l in 1..=terms {
                let lf = l as f64;
                let decay = (-(lf * (lf + 1.0)) * dt).exp();
                if decay < 1e-17 {
                    break;
                }
                f += 0.5 * decay * (p[l - 1] - p[l + 1]);
            }
            f
        };
        d = d
            .max((f - i as f64 / n as f64).abs())
            .max((f - (i + 1) as f64 / n as f64).abs());
    }
    report.check_upper(
        "sphere_angle_law_ks",
        d,
        1.628 / (n as f64).sqrt(),
        "one-sample KS against the exact angle CDF, 1% level",
    );

    Ok(report)
}
