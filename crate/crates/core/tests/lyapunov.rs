mod common;

use approx::assert_relative_eq;
use common::{random_diffusion, random_stable};
use hybrid_cavity::dynamics::{
    integrate_covariance, is_stable, solve_lyapunov, steady_state, CovarianceMatrix,
};
use hybrid_cavity::entanglement::effective_occupation;
use hybrid_cavity::model::{
    effective_params, solve_working_point, thermal_occupation, DriftDiffusion, EffectiveParams,
    PhysicalParams,
};
use nalgebra::Matrix6;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn reference_params(g_a: Option<f64>) -> EffectiveParams {
    let mut p = PhysicalParams::reference();
    if let Some(g) = g_a {
        p.atom_coupling = g;
    }
    let w = solve_working_point(&p).unwrap();
    effective_params(&p, &w)
}

#[test]
fn trivial_examples() {
    let v = solve_lyapunov(&(-0.5 * Matrix6::identity()), &Matrix6::identity()).unwrap();
    assert!((v.covariance.matrix() - Matrix6::identity()).amax() < 1e-14);

    let d = Matrix6::from_diagonal(&nalgebra::Vector6::new(1.0, 2.0, 3.0, 0.0, 5.0, 6.0));
    let v = solve_lyapunov(&(-3.0 * Matrix6::identity()), &d).unwrap();
    assert!((v.covariance.matrix() - d / 6.0).amax() < 1e-14);

    let mut a = -Matrix6::identity();
    a[(5, 5)] = 1e-3;
    assert!(solve_lyapunov(&a, &d).is_err());
}

#[test]
fn integrator_closed_forms() {
    let v0 = CovarianceMatrix::new(Matrix6::from_fn(
        |i, j| if i == j { 1.0 + i as f64 } else { 0.1 },
    ))
    .unwrap();
    let a = -2.0 * Matrix6::identity();
    assert_eq!(
        integrate_covariance(&a, &Matrix6::zeros(), &v0, 0.0).unwrap(),
        v0
    );
    let t = 0.7;
    let v = integrate_covariance(&a, &Matrix6::zeros(), &v0, t).unwrap();
    let want = v0.matrix() * (-2.0 * 2.0 * t).exp();
    assert!((v.matrix() - want).amax() < 1e-9 * want.amax());
    assert!(integrate_covariance(&a, &Matrix6::zeros(), &v0, -1.0).is_err());
}

#[test]
fn random_instances_match_time_integration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (a, margin) = random_stable(&mut rng);
        let d = random_diffusion(&mut rng);
        let sol = solve_lyapunov(&a, &d).unwrap();
        assert!(sol.residual < 1e-10, "residual {}", sol.residual);
        let direct =
            (a * sol.covariance.matrix() + sol.covariance.matrix() * a.transpose() + d).amax();
        assert!(direct < 1e-10 * d.amax().max(f64::MIN_POSITIVE));

        let t = 40.0 / margin;
        let v = integrate_covariance(&a, &d, &CovarianceMatrix::vacuum(), t).unwrap();
        let scale = sol.covariance.matrix().amax().max(1.0);
        worst = worst.max((v.matrix() - sol.covariance.matrix()).amax() / scale);
    }
    assert!(worst < 1e-6, "largest deviation {worst:e}");
}

#[test]
fn reference_working_point_matches_time_integration() {
    let e = reference_params(None);
    let dd = DriftDiffusion::new(&e);
    let sol = solve_lyapunov(&dd.drift, &dd.diffusion).unwrap();
    let v = integrate_covariance(
        &dd.drift,
        &dd.diffusion,
        &CovarianceMatrix::vacuum(),
        40.0 / e.kappa,
    )
    .unwrap();
    let dev = (v.matrix() - sol.covariance.matrix()).amax();
    assert!(dev < 1e-6, "deviation {dev:e}");
    assert!(sol.residual < 1e-10);
    assert!(sol.covariance.is_physical());
}

#[test]
fn decoupled_modes() {
    let mut e = reference_params(None);
    e.g_m = 0.0;
    e.g_a = 0.0;
    let v = steady_state(&e).unwrap().solution.covariance;
    let m = v.matrix();
    for i in 0..6 {
        for j in 0..6 {
            if i / 2 != j / 2 {
                assert!(m[(i, j)].abs() < 1e-12, "({i},{j}) = {}", m[(i, j)]);
            }
        }
    }
    for i in 2..6 {
        assert_relative_eq!(m[(i, i)], 0.5, max_relative = 1e-10);
    }
    assert!(m[(2, 3)].abs() < 1e-12 && m[(4, 5)].abs() < 1e-12);
    let thermal = e.nbar + 0.5;
    assert_relative_eq!(m[(0, 0)], thermal, max_relative = 1e-2);
    assert_relative_eq!(m[(1, 1)], thermal, max_relative = 1e-2);
}

#[test]
fn cooling_at_anti_stokes_resonance() {
    let e = reference_params(Some(0.0));
    assert_relative_eq!(e.nbar, thermal_occupation(0.6, e.omega_m));
    let n_eff = effective_occupation(&steady_state(&e).unwrap().solution.covariance);
    assert!(n_eff > 0.1 && n_eff < 0.4, "n_eff = {n_eff}");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scale_covariance(seed in any::<u64>(), s in 1e-4f64..1e8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = random_stable(&mut rng);
        let d = random_diffusion(&mut rng);
        prop_assume!(d.amax() > 0.0);
        let v1 = solve_lyapunov(&a, &d).unwrap().covariance;
        let v2 = solve_lyapunov(&(a * s), &(d * s)).unwrap().covariance;
        let tol = 1e-10 * v1.matrix().amax();
        prop_assert!((v1.matrix() - v2.matrix()).amax() <= tol);
    }

    #[test]
    fn residual_and_symmetry(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, _) = random_stable(&mut rng);
        let d = random_diffusion(&mut rng);
        let sol = solve_lyapunov(&a, &d).unwrap();
        prop_assert!(sol.residual < 1e-10);
        let m = sol.covariance.matrix();
        prop_assert_eq!(m, &m.transpose());
        prop_assert!(is_stable(&a).unwrap().stable);
    }

    #[test]
    fn physical_everywhere_near_the_reference_point(
        delta in 0.3f64..2.0, delta_a in -3.0f64..3.0, t in 0.0f64..30.0, scale in 0.25f64..1.0,
    ) {
        let mut e = reference_params(None);
        e.delta *= delta;
        e.delta_a = delta_a * e.omega_m;
        e.nbar = thermal_occupation(t, e.omega_m);
        e.g_m *= scale;
        match steady_state(&e) {
            Ok(ss) => prop_assert!(ss.solution.covariance.min_symplectic_eigenvalue().unwrap() >= 0.5 - 1e-9),
            Err(hybrid_cavity::Error::Unstable { .. }) => {}
            Err(other) => prop_assert!(false, "{other}"),
        }
    }
}
