use kgz_core::dynamics::{gaussian_data, run_first_order, run_simulation, ComplexState, Model, SimConfig};
use kgz_core::normalform::{
    bilinear_apply, cubic_terms, duhamel_residual, duhamel_residuals, simpson_weights, BilinearPlan, BilinearSymbol,
    boundedness_sweep, Component, Estimate, NormalForm, QuadratureConfig, SweepConfig,
};
use kgz_core::radial::{chi, PhysField, RadialGrid, SpectralField};
use kgz_core::resonance::compute_params;
use kgz_core::Error;
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use std::f64::consts::PI;

fn gaussian(grid: &RadialGrid, a: f64, w: f64) -> PhysField {
    PhysField::from_real_fn(grid, move |r| a * (-(r / w).powi(2)).exp())
}

#[test]
fn plain_symbol_reproduces_pointwise_product() {
    let grid = RadialGrid::new(40.0, 128).unwrap();
    let p = compute_params(0.5).unwrap();
    let f = gaussian(&grid, 1.0, 1.0);
    let g = PhysField::from_real_fn(&grid, |r| (-(r * r) / 2.0).exp() * (2.0 * r).cos());
    let quad = bilinear_apply(&BilinearSymbol::plain(&p), &f, &g, QuadratureConfig::default()).unwrap();
    let direct = f.pointwise_mul(&g).unwrap();
    let rel = quad.try_sub(&direct).unwrap().l2_norm() / direct.l2_norm();
    assert!(rel < 1e-3, "relative difference {rel:e}");
}

#[test]
fn omega_vanishes_without_high_low_support() {
    let grid = RadialGrid::new(40.0, 256).unwrap();
    let p = compute_params(0.5).unwrap().with_k_alpha(4);
    // N only below 1, U only above 2: no pair with eta <= zeta / 4.
    let n = SpectralField::from_fn(&grid, |xi| Complex64::new(if xi < 1.0 { 1.0 } else { 0.0 }, 0.0));
    let u = SpectralField::from_fn(&grid, |xi| Complex64::new(if xi > 2.0 && xi < 6.0 { 1.0 } else { 0.0 }, 0.0));
    let plan = BilinearPlan::new(&grid, &BilinearSymbol::omega(&p), QuadratureConfig::default()).unwrap();
    let out = plan.apply(&n, &u).unwrap();
    assert!(out.coeffs().iter().all(|z| *z == Complex64::new(0.0, 0.0)));
}

#[test]
fn resonant_symbol_evaluation_is_guarded() {
    // With a needle-thin annulus the cutoff no longer hides the zero of omega_1.
    let mut p = compute_params(0.5).unwrap().with_k_alpha(3);
    p.delta = 1e-4;
    let (eta, zeta): (f64, f64) = (1e-6, p.c + 3e-4);
    let bracket = 0.5 * zeta + (1.0 + eta * eta).sqrt();
    let xi = (bracket * bracket - 1.0).sqrt();
    let s = BilinearSymbol::omega(&p);
    assert!(matches!(s.eval(xi, eta, zeta), Err(Error::SingularSymbol { .. })));
    let ok = compute_params(0.5).unwrap().with_k_alpha(3);
    assert_eq!(BilinearSymbol::omega(&ok).eval(xi, eta, zeta).unwrap(), 0.0);
}

// (2 pi)^{-3} sum_i dxi eta_i^2 g_i 2 pi int_{-1}^{1} m f^(|xi - eta|) d cos, with a
// composite Gauss-Legendre rule in the angle at four times the plan's nodes.
fn dense_angle_oracle(symbol: &BilinearSymbol, f: &SpectralField, g: &SpectralField, m: usize) -> Complex64 {
    let grid = f.grid();
    let rule = GaussLegendre::new(16).unwrap();
    let xi = grid.xi(m);
    let mut total = Complex64::new(0.0, 0.0);
    for (i, gi) in g.coeffs().iter().enumerate() {
        if gi.norm() == 0.0 {
            continue;
        }
        let eta = grid.xi(i);
        let mut inner = Complex64::new(0.0, 0.0);
        for panel in 0..16 {
            let a = -1.0 + panel as f64 / 8.0;
            let b = a + 1.0 / 8.0;
            for (x, w) in rule.iter() {
                let cos = 0.5 * (a + b) + 0.5 * (b - a) * x;
                let zeta = (xi * xi + eta * eta - 2.0 * xi * eta * cos).max(0.0).sqrt();
                let s = symbol.eval(xi, eta, zeta).unwrap();
                inner += f.interpolate(zeta) * (0.5 * (b - a) * w * s);
            }
        }
        total += inner * gi * (grid.dxi() * eta * eta * 2.0 * PI);
    }
    total / (2.0 * PI).powi(3)
}

#[test]
fn omega_matches_dense_angular_quadrature() {
    // f at dyadic scale 2^9, g at scale 1.
    let grid = RadialGrid::new(2.2, 720).unwrap();
    let p = compute_params(0.5).unwrap().with_k_alpha(5);
    let f = SpectralField::from_fn(&grid, |xi| Complex64::new(chi(9, xi), 0.0));
    let g = SpectralField::from_fn(&grid, |xi| Complex64::new(chi(0, xi), 0.0));
    assert!(g.coeffs().iter().filter(|z| z.norm() > 0.0).count() >= 1);
    let symbol = BilinearSymbol::omega(&p);
    let plan = BilinearPlan::new(&grid, &symbol, QuadratureConfig::default()).unwrap();
    let out = plan.apply(&f, &g).unwrap();
    let oracle = SpectralField::from_fn(&grid, |_| Complex64::new(0.0, 0.0));
    let mut coeffs = oracle.into_coeffs();
    for (m, c) in coeffs.iter_mut().enumerate() {
        let xi = grid.xi(m);
        if xi > 200.0 && xi < 1100.0 {
            *c = dense_angle_oracle(&symbol, &f, &g, m);
        }
    }
    let oracle = SpectralField::new(&grid, coeffs).unwrap();
    assert!(oracle.l2_norm() > 0.0);
    let rel = (out.l2_norm() - oracle.l2_norm()).abs() / oracle.l2_norm();
    assert!(rel < 1e-3, "norm mismatch {rel:e}");
    let pointwise = out.try_sub(&oracle).unwrap().l2_norm() / oracle.l2_norm();
    assert!(pointwise < 1e-3, "coefficient mismatch {pointwise:e}");
}

#[test]
fn zero_inputs_give_zero() {
    let grid = RadialGrid::new(40.0, 64).unwrap();
    let p = compute_params(0.5).unwrap().capped_for_grid(&grid).0;
    let z = PhysField::zeros(&grid);
    let u = gaussian(&grid, 1.0, 1.0);
    assert_eq!(kgz_core::normalform::boundary_term_u(&z, &u, &p).unwrap().sup_norm(), 0.0);
    let plain = bilinear_apply(&BilinearSymbol::plain(&p), &u, &z, QuadratureConfig::default()).unwrap();
    assert_eq!(plain.sup_norm(), 0.0);
}

#[test]
fn plan_is_bilinear() {
    let grid = RadialGrid::new(40.0, 128).unwrap();
    let p = compute_params(0.5).unwrap().capped_for_grid(&grid).0;
    let plan = BilinearPlan::new(&grid, &BilinearSymbol::omega_tilde(&p), QuadratureConfig::default()).unwrap();
    assert!(!plan.is_empty());
    let f = gaussian(&grid, 1.0, 1.5).to_spectral();
    let g = gaussian(&grid, 0.5, 0.7).to_spectral();
    let h = PhysField::from_real_fn(&grid, |r| (-r).exp()).to_spectral();
    let a = Complex64::new(0.3, -1.2);
    let lhs = plan.apply(&(&f + &h.scale(a)), &g).unwrap();
    let rhs = &plan.apply(&f, &g).unwrap() + &plan.apply(&h, &g).unwrap().scale(a);
    assert!(lhs.try_sub(&rhs).unwrap().l2_norm() < 1e-12 * (1.0 + rhs.l2_norm()));
    // second slot is antilinear
    let lhs = plan.apply(&f, &g.scale(a)).unwrap();
    let rhs = plan.apply(&f, &g).unwrap().scale(a.conj());
    assert!(lhs.try_sub(&rhs).unwrap().l2_norm() < 1e-12 * (1.0 + rhs.l2_norm()));
}

#[test]
fn cubic_terms_are_trilinear() {
    let grid = RadialGrid::new(40.0, 128).unwrap();
    let p = compute_params(0.5).unwrap().with_k_alpha(3);
    let n = gaussian(&grid, 0.2, 1.0);
    let u = PhysField::from_fn(&grid, |r| Complex64::new((-r * r).exp(), 0.3 * (-r * r / 3.0).exp()));
    let one = cubic_terms(&n, &u, &p).unwrap();
    let two = cubic_terms(&n, &u.scale(Complex64::new(2.0, 0.0)), &p).unwrap();
    let scaled = &one.omega_wave * 8.0;
    assert!(two.omega_wave.max_abs_diff(&scaled) <= 1e-8 * scaled.sup_norm());
    assert!(one.omega_wave.sup_norm() > 0.0);
    let scaled = &one.omega_kg * 2.0;
    assert!(two.omega_kg.max_abs_diff(&scaled) <= 1e-8 * scaled.sup_norm());
}

#[test]
fn simpson_weights_integrate_cubics() {
    for n in 1..12 {
        let h = 0.3;
        let w = simpson_weights(n, h);
        let t_end = n as f64 * h;
        let f = |t: f64| if n == 1 { 2.0 * t + 1.0 } else { t * t * t - t + 2.0 };
        let exact = if n == 1 {
            t_end * t_end + t_end
        } else {
            t_end.powi(4) / 4.0 - t_end * t_end / 2.0 + 2.0 * t_end
        };
        let got: f64 = w.iter().enumerate().map(|(i, w)| w * f(i as f64 * h)).sum();
        assert!((got - exact).abs() < 1e-12 * exact.abs().max(1.0), "n = {n}");
    }
}

#[test]
fn linear_trajectories_satisfy_free_equation() {
    let grid = RadialGrid::new(40.0, 128).unwrap();
    let mut cfg = SimConfig::new(0.5, 40.0, 128);
    cfg.linear = true;
    cfg.horizon = 1.0;
    cfg.dt = 0.1;
    let traj = run_simulation(&cfg, &gaussian_data(&grid, 0.1, 1.0)).unwrap();
    let p = compute_params(0.5).unwrap();
    assert!(duhamel_residual(&traj, &p, Component::U).unwrap() < 1e-13);
    assert!(duhamel_residual(&traj, &p, Component::N).unwrap() < 1e-13);
}

#[test]
fn full_model_is_rejected() {
    let grid = RadialGrid::new(40.0, 64).unwrap();
    let mut cfg = SimConfig::new(0.5, 40.0, 64);
    cfg.horizon = 0.2;
    cfg.dt = 0.05;
    let traj = run_simulation(&cfg, &gaussian_data(&grid, 0.1, 1.0)).unwrap();
    let p = compute_params(0.5).unwrap();
    assert!(matches!(duhamel_residual(&traj, &p, Component::U), Err(Error::Model(_))));
}

#[test]
fn integral_equations_hold_with_substantial_high_low_part() {
    // Small k_alpha makes the non-resonant part large enough that the sign of
    // every normal-form term matters.
    let grid = RadialGrid::new(40.0, 256).unwrap();
    let mut cfg = SimConfig::new(0.5, 40.0, 256);
    cfg.model = Model::Simplified;
    cfg.horizon = 2.0;
    cfg.dt = 0.01;
    cfg.snapshot_stride = 5;
    let traj = run_simulation(&cfg, &gaussian_data(&grid, 1.0, 1.0)).unwrap();
    let p = compute_params(0.5).unwrap().with_k_alpha(3);
    let nf = NormalForm::new(&grid, &p, QuadratureConfig::default(), true).unwrap();
    let u = traj.last().state.u.to_spectral();
    assert!(nf.boundary_u(&traj.last().state.n.to_spectral(), &u).unwrap().l2_norm() > 1e-3 * u.l2_norm());
    let r = duhamel_residuals(&traj, &p, QuadratureConfig::default()).unwrap();
    assert!(r.u < 1e-4 && r.n < 1e-4, "{r:?}");
}

#[test]
fn zero_data_has_zero_residual() {
    let grid = RadialGrid::new(40.0, 64).unwrap();
    let mut cfg = SimConfig::new(0.5, 40.0, 64);
    cfg.model = Model::Simplified;
    cfg.horizon = 0.2;
    cfg.dt = 0.05;
    let z = PhysField::zeros(&grid);
    let traj = run_first_order(&cfg, &ComplexState::new(z.clone(), z, 0.0).unwrap()).unwrap();
    let p = compute_params(0.5).unwrap().capped_for_grid(&grid).0;
    assert_eq!(duhamel_residual(&traj, &p, Component::N).unwrap(), 0.0);
}

#[test]
fn boundedness_constants_are_refinement_stable() {
    let p = compute_params(0.5).unwrap().with_k_alpha(5);
    let config = SweepConfig { modes: vec![96, 192], trials: 6, band: 32, ..SweepConfig::default() };
    let report = boundedness_sweep(&p, &config).unwrap();
    assert_eq!(report.rows.len(), 2 * 6 * Estimate::ALL.len());
    for c in &report.constants {
        assert!(c.finite(), "{c:?}");
        assert!(c.spread() < 1.1, "{} spread {}", c.estimate, c.spread());
    }
    assert!(report.stable_within(2.0));
    let too_wide = SweepConfig { modes: vec![96], band: 80, ..config };
    assert!(boundedness_sweep(&p, &too_wide).is_err());
}
