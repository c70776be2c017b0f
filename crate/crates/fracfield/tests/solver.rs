//! Solver integration: regularity flagging on rough data, stochastic
//! representation on the 2-torus, residual magnitudes.

use fracfield::manifold::{ManifoldPoint, SpectralBackend, Sphere2, Torus};
use fracfield::solver::{
    frac_time_solve, heat_solve, pde_residual, sobolev_check, stochastic_representation,
    strong_solution_threshold, Problem, SpectralCoefficients,
};
use fracfield::specfun::mode_index;
use fracfield::subordinate::LaplaceExponent;
use fracfield::RngState;
use num_complex::Complex64;

#[test]
fn point_mass_data_is_flagged_weak_regime() {
    // the projection of a point mass has |kappa_j|^2 ~ (2l+1)/4pi, far too
    // rough for the strong-solution hypothesis
    let s = Sphere2::new(16).unwrap();
    let p = ManifoldPoint::sphere(1.0, 2.0).unwrap();
    let basis = s.basis_at(&p).unwrap();
    let values: Vec<Complex64> = basis.iter().map(|phi| phi.conj()).collect();
    let init = SpectralCoefficients::new(s.id(), values);
    let chk = sobolev_check(&s, &init, strong_solution_threshold(2) + 0.25).unwrap();
    assert!(!chk.passes);
    let snap = frac_time_solve(&s, &init, 0.5, 0.3).unwrap();
    assert!(
        snap.weak_regime,
        "rough data must carry the weak-regime flag"
    );
    // smooth band-limited data does not
    let smooth = SpectralCoefficients::single_mode(&s, mode_index(2, 1)).unwrap();
    let snap = frac_time_solve(&s, &smooth, 0.5, 0.3).unwrap();
    assert!(!snap.weak_regime);
}

#[test]
fn torus2_stochastic_representation() {
    let backend = Torus::new(2, 8).unwrap();
    let init = fracfield::manifold::project(&backend, &|p: &ManifoldPoint| {
        let ManifoldPoint::Torus { x, .. } = p else {
            unreachable!()
        };
        0.5 + x[0].cos() + 0.4 * (x[0] + x[1]).sin()
    })
    .unwrap();
    let t = 0.4;
    let probe = ManifoldPoint::torus2(0.5, -1.3);
    let rng = RngState::from_seed(8101);
    for (k, problem) in [
        Problem::Heat,
        Problem::TimeFractional { beta: 0.5 },
        Problem::SpaceFractional {
            psi: LaplaceExponent::geometric_stable(0.6),
        },
    ]
    .iter()
    .enumerate()
    {
        let snap = match problem {
            Problem::Heat => heat_solve(&backend, &init, t).unwrap(),
            Problem::TimeFractional { beta } => frac_time_solve(&backend, &init, *beta, t).unwrap(),
            Problem::SpaceFractional { psi } => {
                fracfield::solver::frac_space_solve(&backend, &init, psi, t).unwrap()
            }
        };
        let want = snap.coefficients.evaluate(&backend, &probe).unwrap().re;
        let est = stochastic_representation(
            &backend,
            &init,
            problem,
            &probe,
            t,
            10_000,
            20,
            &rng.substream(k as u64),
        )
        .unwrap();
        assert!(
            est.sigmas_from(want) < 3.0,
            "{}: MC {} vs spectral {want} ({}sigma)",
            problem.label(),
            est.mean,
            est.sigmas_from(want)
        );
    }
}

#[test]
fn fractional_residual_scale_follows_the_l1_order() {
    // residual ~ C dt^{3/2} at beta = 1/2: fit C on one grid, then verify
    // the bound with the same C on a finer one
    let s = Sphere2::new(8).unwrap();
    let mut init = SpectralCoefficients::zero(&s);
    init.values_mut()[mode_index(1, 0)] = Complex64::new(1.0, 0.0);
    init.values_mut()[mode_index(2, 2)] = Complex64::new(0.3, 0.0);
    init.values_mut()[mode_index(2, -2)] = Complex64::new(0.3, 0.0);
    let probes = [
        ManifoldPoint::sphere(0.9, 0.4).unwrap(),
        ManifoldPoint::sphere(2.1, 3.3).unwrap(),
    ];
    let beta = 0.5;
    let res = |steps: usize| -> f64 {
        let dt = 1.0 / steps as f64;
        let snaps: Vec<_> = (0..=steps)
            .map(|k| frac_time_solve(&s, &init, beta, k as f64 * dt).unwrap())
            .collect();
        pde_residual(&s, &snaps, &Problem::TimeFractional { beta }, &probes).unwrap()
    };
    let coarse = res(64);
    let c_fit = coarse / (1.0f64 / 64.0).powf(1.5);
    let fine = res(256);
    assert!(
        fine <= 1.3 * c_fit * (1.0f64 / 256.0).powf(1.5),
        "residual {fine} exceeds the fitted C dt^1.5 envelope"
    );
}

#[test]
fn heat_residual_of_constant_data_is_machine_zero() {
    let s = Sphere2::new(4).unwrap();
    let init = SpectralCoefficients::single_mode(&s, 0).unwrap();
    let snaps: Vec<_> = (0..10)
        .map(|k| heat_solve(&s, &init, k as f64 * 0.05).unwrap())
        .collect();
    let probes = [ManifoldPoint::sphere(1.0, 1.0).unwrap()];
    let r = pde_residual(&s, &snaps, &Problem::Heat, &probes).unwrap();
    assert!(r < 1e-12);
}
