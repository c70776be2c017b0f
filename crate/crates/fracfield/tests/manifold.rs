//! Cross-checks of the spectral backends: transition samplers against the
//! eigenfunction decay law, projections, and killed-path bookkeeping.

use fracfield::manifold::{
    project, sample_brownian_path, weyl_diagnostic, IntervalDirichlet, ManifoldPoint,
    SpectralBackend, Sphere2, Torus,
};
use fracfield::rng::RngState;
use fracfield::specfun::mode_index;
use num_complex::Complex64;

/// E φ_j(B^x_t) = e^{−λ_j t} φ_j(x): the sampler must reproduce the mode
/// decay of its own backend.
fn transition_mode_decay(
    backend: &dyn SpectralBackend,
    start: &ManifoldPoint,
    modes: &[usize],
    t: f64,
    n: usize,
    rng: &mut RngState,
) -> f64 {
    let mut sums = vec![Complex64::new(0.0, 0.0); modes.len()];
    let mut sumsq = vec![0.0f64; modes.len()];
    for _ in 0..n {
        let tr = backend.sample_transition(start, t, rng).unwrap();
        let basis = backend.basis_at(&tr.point).unwrap();
        for (k, &j) in modes.iter().enumerate() {
            sums[k] += basis[j];
            sumsq[k] += basis[j].norm_sqr();
        }
    }
    let start_basis = backend.basis_at(start).unwrap();
    let mut worst = 0.0f64;
    for (k, &j) in modes.iter().enumerate() {
        let mean = sums[k] / n as f64;
        let want = start_basis[j] * (-backend.eigenvalue(j) * t).exp();
        let var = (sumsq[k] / n as f64 - mean.norm_sqr()).max(1e-300);
        let se = (var / n as f64).sqrt();
        worst = worst.max((mean - want).norm() / se);
    }
    worst
}

#[test]
fn sphere_transitions_decay_every_mode_correctly() {
    let s = Sphere2::new(8).unwrap();
    let start = ManifoldPoint::sphere(1.2, 0.7).unwrap();
    let modes = [
        mode_index(1, 0),
        mode_index(1, 1),
        mode_index(2, -1),
        mode_index(4, 3),
    ];
    let mut rng = RngState::from_seed(7001);
    let worst = transition_mode_decay(&s, &start, &modes, 0.25, 40_000, &mut rng);
    assert!(worst < 3.5, "max z {worst}");
}

#[test]
fn torus_transitions_decay_every_mode_correctly() {
    let t2 = Torus::new(2, 6).unwrap();
    let start = ManifoldPoint::torus2(0.4, -1.0);
    let modes = [1usize, 3, 8, 20];
    let mut rng = RngState::from_seed(7002);
    let worst = transition_mode_decay(&t2, &start, &modes, 0.3, 40_000, &mut rng);
    assert!(worst < 3.5, "max z {worst}");
}

#[test]
fn torus2_projection_reconstructs_band_limited_data() {
    let t2 = Torus::new(2, 8).unwrap();
    let f = |p: &ManifoldPoint| {
        let ManifoldPoint::Torus { x, .. } = p else {
            unreachable!()
        };
        0.3 + x[0].cos() - 0.7 * (x[0] + 2.0 * x[1]).sin()
    };
    let coeffs = project(&t2, &f).unwrap();
    for (p, _) in t2.quadrature().iter().step_by(11) {
        let v = coeffs.evaluate(&t2, p).unwrap();
        assert!((v.re - f(p)).abs() < 1e-10);
        assert!(v.im.abs() < 1e-12);
    }
}

#[test]
fn interval_paths_never_resurrect_and_killing_is_substantial() {
    let b = IntervalDirichlet::new(32).unwrap();
    let start = ManifoldPoint::interval(1.5).unwrap();
    let mut rng = RngState::from_seed(7003);
    let mut killed = 0usize;
    for _ in 0..500 {
        let path = sample_brownian_path(&b, &start, 3.0, 60, &mut rng).unwrap();
        let mut dead = false;
        for (k, alive) in path.alive.iter().enumerate() {
            if dead {
                assert!(!alive, "resurrected at step {k}");
            }
            dead |= !alive;
        }
        killed += usize::from(dead);
    }
    // survival at t = 3 from the center is about (4/pi) e^{-3} ~ 6%
    assert!(killed > 400, "only {killed} of 500 paths were absorbed");
}

#[test]
fn weyl_ratios_converge_for_all_backends() {
    let s = Sphere2::new(20).unwrap();
    let r = weyl_diagnostic(&s, 400).unwrap();
    assert!((r.ratios[199] - 1.0).abs() < 0.2);
    assert!((r.ratios[399] - 1.0).abs() < 0.2);
    let t2 = Torus::new(2, 16).unwrap();
    let r = weyl_diagnostic(&t2, 500).unwrap();
    assert!((r.ratios[499] - 1.0).abs() < 0.2);
    let iv = IntervalDirichlet::new(64).unwrap();
    let r = weyl_diagnostic(&iv, 64).unwrap();
    for ratio in &r.ratios {
        assert!((ratio - 1.0).abs() < 1e-12, "1d Weyl is exact, got {ratio}");
    }
}

#[test]
fn sphere_two_step_composition_is_exact_at_scale() {
    // one dt step vs two dt/2 steps, two-sample KS at the 1% level
    let s = Sphere2::new(8).unwrap();
    let from = ManifoldPoint::sphere(1.1, 0.4).unwrap();
    let dt = 0.3;
    let n = 100_000usize;
    let mut rng = RngState::from_seed(7004);
    let mut one = Vec::with_capacity(n);
    let mut two = Vec::with_capacity(n);
    for _ in 0..n {
        let a = s.sample_transition(&from, dt, &mut rng).unwrap().point;
        one.push(fracfield::manifold::sphere_angle(&from, &a).unwrap().cos());
        let mid = s
            .sample_transition(&from, dt / 2.0, &mut rng)
            .unwrap()
            .point;
        let b = s.sample_transition(&mid, dt / 2.0, &mut rng).unwrap().point;
        two.push(fracfield::manifold::sphere_angle(&from, &b).unwrap().cos());
    }
    one.sort_by(|x, y| x.partial_cmp(y).unwrap());
    two.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < n && j < n {
        if one[i] <= two[j] {
            i += 1
        } else {
            j += 1
        }
        d = d.max((i as f64 - j as f64).abs() / n as f64);
    }
    let crit = 1.628 * ((2 * n) as f64 / (n * n) as f64).sqrt();
    assert!(d < crit, "KS distance {d} vs critical {crit}");
}

#[test]
fn out_of_range_diagnostics() {
    let s = Sphere2::new(4).unwrap();
    assert!(weyl_diagnostic(&s, 0).is_err());
    assert!(weyl_diagnostic(&s, 26).is_err());
    let p = ManifoldPoint::torus1(0.0);
    assert!(s.heat_kernel(&p, &p, 0.5).is_err());
    let q = ManifoldPoint::sphere(1.0, 1.0).unwrap();
    assert!(s.heat_kernel(&q, &q, 0.0).is_err());
    let mut rng = RngState::from_seed(1);
    assert!(s.sample_transition(&q, -1.0, &mut rng).is_err());
}
