use kgz_core::dynamics::{
    energy_of, from_first_order, gaussian_data, oracle_evolve, restrict, rhs, run_first_order,
    run_simulation, step, to_first_order, ComplexState, Model, OracleParams, RealState, SimConfig,
};
use kgz_core::radial::{PhysField, RadialGrid, SpectralField};
use kgz_core::Error;
use num_complex::Complex64;

fn config(grid: &RadialGrid, alpha: f64) -> SimConfig {
    SimConfig::new(alpha, grid.radius(), grid.modes())
}

fn wavy_state(grid: &RadialGrid) -> RealState {
    let f = |a: f64, b: f64| PhysField::from_real_fn(grid, move |r| a * (-r * r * b).exp() * (1.0 + r).cos());
    RealState::new(f(0.3, 1.0), f(-0.2, 0.5), f(0.1, 2.0), f(0.4, 0.7)).unwrap()
}

#[test]
fn first_order_roundtrip() {
    let grid = RadialGrid::new(15.0, 200).unwrap();
    let s = wavy_state(&grid);
    let back = from_first_order(&to_first_order(&s, 0.5).unwrap(), 0.5).unwrap();
    for (a, b) in [(&s.u, &back.u), (&s.u_dot, &back.u_dot), (&s.n, &back.n), (&s.n_dot, &back.n_dot)] {
        assert!(a.max_abs_diff(b) < 1e-12);
    }
    assert!(back.max_imag() < 1e-12);
}

#[test]
fn linear_step_is_exact_propagator() {
    let grid = RadialGrid::new(10.0, 128).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.linear = true;
    let c = to_first_order(&wavy_state(&grid), 0.5).unwrap();
    let next = step(&c, 0.37, &cfg).unwrap();
    let u = c.u.to_spectral().kg_propagate(0.37).to_physical();
    let n = c.n.to_spectral().wave_propagate(0.37, 0.5).to_physical();
    assert!(next.u.max_abs_diff(&u) < 1e-13);
    assert!(next.n.max_abs_diff(&n) < 1e-13);
}

#[test]
fn eigenmode_phase_is_exact_over_long_times() {
    let grid = RadialGrid::new(12.0, 64).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.linear = true;
    cfg.horizon = 10.0;
    cfg.dt = 0.1;
    let m = 5;
    let mode = |a: f64| {
        let mut c = vec![Complex64::new(0.0, 0.0); 64];
        c[m] = Complex64::new(a, 0.0);
        SpectralField::new(&grid, c).unwrap().to_physical()
    };
    let init = ComplexState::new(mode(1.0), mode(2.0), 0.0).unwrap();
    let traj = run_first_order(&cfg, &init).unwrap();
    let end = &traj.last().state;
    let xi = grid.xi(m);
    let u = end.u.to_spectral().coeffs()[m];
    let n = end.n.to_spectral().coeffs()[m];
    let want_u = Complex64::from_polar(1.0, 10.0 * (1.0 + xi * xi).sqrt());
    let want_n = Complex64::from_polar(2.0, 10.0 * 0.5 * xi);
    assert!((u - want_u).norm() < 1e-10);
    assert!((n - want_n).norm() < 1e-10);
}

#[test]
fn full_and_simplified_agree_on_real_states() {
    let grid = RadialGrid::new(10.0, 96).unwrap();
    let u = PhysField::from_real_fn(&grid, |r| 0.2 * (-r * r).exp());
    let n = PhysField::from_real_fn(&grid, |r| -0.1 * (-r * r / 2.0).exp());
    let c = ComplexState::new(u, n, 0.0).unwrap();
    let mut cfg = config(&grid, 0.5);
    let (fu, fn_) = rhs(&c, &cfg).unwrap();
    cfg.model = Model::Simplified;
    let (su, sn) = rhs(&c, &cfg).unwrap();
    assert!(fu.max_abs_diff(&su) < 1e-14);
    assert!(fn_.max_abs_diff(&sn) < 1e-14);
}

#[test]
fn zero_data_stays_zero() {
    let grid = RadialGrid::new(10.0, 64).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.horizon = 0.5;
    let traj = run_simulation(&cfg, &RealState::zeros(&grid)).unwrap();
    assert!(traj.last().u_l2 == 0.0 && traj.last().n_l2 == 0.0);
    let fd = oracle_evolve(&RealState::zeros(&grid), 0.5, 0.5, OracleParams::default()).unwrap();
    assert!(fd.u.sup_norm() == 0.0 && fd.n.sup_norm() == 0.0);
}

#[test]
fn horizon_zero_gives_single_snapshot() {
    let grid = RadialGrid::new(10.0, 64).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.horizon = 0.0;
    let traj = run_simulation(&cfg, &gaussian_data(&grid, 1e-2, 1.0)).unwrap();
    assert_eq!(traj.snapshots.len(), 1);
}

#[test]
fn runs_are_bit_identical() {
    let grid = RadialGrid::new(10.0, 64).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.horizon = 0.3;
    cfg.snapshot_stride = 3;
    let init = gaussian_data(&grid, 0.1, 1.0);
    let a = run_simulation(&cfg, &init).unwrap();
    let b = run_simulation(&cfg, &init).unwrap();
    assert_eq!(a.snapshots.len(), b.snapshots.len());
    for (x, y) in a.snapshots.iter().zip(&b.snapshots) {
        assert_eq!(x.state.u.values(), y.state.u.values());
        assert_eq!(x.state.n.values(), y.state.n.values());
        assert_eq!(x.energy.to_bits(), y.energy.to_bits());
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let grid = RadialGrid::new(10.0, 64).unwrap();
    let init = RealState::zeros(&grid);
    let mut cfg = config(&grid, 1.0);
    assert!(matches!(run_simulation(&cfg, &init), Err(Error::InvalidConfig(_))));
    cfg.alpha = 0.5;
    cfg.dt = -1.0;
    assert!(run_simulation(&cfg, &init).is_err());
    cfg.dt = 0.01;
    cfg.modes = 65;
    assert!(run_simulation(&cfg, &init).is_err());
    let params = OracleParams { refine: 4, dt: Some(1.0) };
    assert!(matches!(oracle_evolve(&init, 0.5, 1.0, params), Err(Error::Cfl { .. })));
}

#[test]
fn blow_up_is_reported_with_time() {
    // Large focusing data drives the coupled system to overflow quickly.
    let grid = RadialGrid::new(10.0, 128).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.model = Model::Simplified;
    cfg.horizon = 50.0;
    cfg.dt = 0.05;
    let u = PhysField::from_real_fn(&grid, |r| 200.0 * (-r * r).exp());
    let n = PhysField::from_real_fn(&grid, |r| 500.0 * (-r * r).exp());
    let init = ComplexState::new(u, n, 0.0).unwrap();
    match run_first_order(&cfg, &init) {
        Err(Error::BlowUp { t }) => assert!(t > 0.0 && t <= 50.0),
        other => panic!("expected blow-up, got {:?}", other.map(|t| t.snapshots.len())),
    }
}

#[test]
fn energy_is_conserved_on_short_run() {
    let grid = RadialGrid::new(20.0, 256).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.horizon = 2.0;
    cfg.dt = 1e-3;
    cfg.snapshot_stride = 500;
    let traj = run_simulation(&cfg, &gaussian_data(&grid, 1e-2, 1.0)).unwrap();
    let e0 = traj.snapshots[0].energy;
    for s in &traj.snapshots {
        assert!((s.energy - e0).abs() < 1e-6 * e0.abs(), "drift {}", (s.energy - e0) / e0);
    }
    assert!((energy_of(&traj.last().state, 0.5).unwrap() - traj.last().energy).abs() == 0.0);
}

#[test]
fn spectral_solution_matches_finite_difference_oracle() {
    let grid = RadialGrid::new(20.0, 256).unwrap();
    let mut cfg = config(&grid, 0.5);
    cfg.horizon = 1.0;
    cfg.dt = 5e-3;
    let init = gaussian_data(&grid, 0.5, 1.0);
    let spectral = from_first_order(&run_simulation(&cfg, &init).unwrap().last().state, 0.5).unwrap();
    let fd = oracle_evolve(&init, 0.5, 1.0, OracleParams::default()).unwrap();
    for (a, b) in [(&spectral.u, &fd.u), (&spectral.n, &fd.n)] {
        let b = restrict(b, &grid).unwrap();
        let rel = a.try_sub(&b).unwrap().l2_norm() / a.l2_norm();
        assert!(rel < 1e-2, "relative difference {rel:e}");
    }
}
