use kgz_core::radial::{product, PhysField, RadialGrid};
use kgz_core::resonance::{
    compute_params, decompose_bilinear, dual_point, in_support, omega, omega_tilde, resonance_profile,
    verify_lemma_bounds, verify_params, InteractionTag, Regime,
};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn resonant_radius_matches_formula() {
    for alpha in [0.1, 0.3, 0.5, 0.8, 0.99, 1.01, 1.25, 2.0, 3.0, 7.0] {
        let p = compute_params(alpha).unwrap();
        let c = 2.0 * alpha / (1.0 - alpha * alpha).abs();
        assert!((p.c - c).abs() < 1e-12 * c);
        assert!(resonance_profile(alpha, p.c).abs() < 1e-12);
        assert!(p.delta > 0.0 && p.delta < p.c);
        assert!(p.k_alpha >= 5 && p.rho > 0.0);
    }
}

#[test]
fn half_speed_parameters() {
    let p = compute_params(0.5).unwrap();
    assert_eq!(p.regime, Regime::Slow);
    assert!((p.c - 4.0 / 3.0).abs() < 1e-12);
    assert!((p.delta - 1.0 / 3.0).abs() < 1e-12);
    assert!(p.rho > 0.05 && p.rho < 0.07, "rho = {}", p.rho);
    assert_eq!(p.k_alpha, 10);
    assert!((p.r0().unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    assert!(compute_params(2.0).unwrap().r0().is_none());
}

#[test]
fn double_speed_parameters() {
    let p = compute_params(2.0).unwrap();
    assert_eq!(p.regime, Regime::Fast);
    assert!((p.c - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(p.rho, 0.5);
    assert_eq!(p.k_alpha, 5);
    // crossings of |g| = r/2 at 20/21 and 12/5
    assert!((p.delta - (12.0 / 5.0 - 4.0 / 3.0)).abs() < 1e-8);
}

#[test]
fn degenerate_speed_is_rejected() {
    assert!(compute_params(1.0).is_err());
    assert!(compute_params(1.0 + 1e-7).is_err());
    assert!(compute_params(-0.5).is_err());
    assert!(omega(5, 1.0, 1.0, 0.0, 0.5).is_err());
}

#[test]
fn resonant_block_rule_at_half_speed() {
    let p = compute_params(0.5).unwrap();
    let ks: Vec<i32> = (-8..12)
        .filter(|&k| in_support(InteractionTag::AlphaL, k, k - p.k_alpha - 1, &p))
        .collect();
    assert_eq!(ks, vec![0]);
    for k1 in -5..15 {
        for k2 in -5..15 {
            let hl = in_support(InteractionTag::HL, k1, k2, &p);
            let split = in_support(InteractionTag::AlphaL, k1, k2, &p) as u8
                + in_support(InteractionTag::XL, k1, k2, &p) as u8;
            assert_eq!(hl as u8, split);
            let n = [InteractionTag::LH, InteractionTag::HL, InteractionTag::HH]
                .iter()
                .filter(|&&t| in_support(t, k1, k2, &p))
                .count();
            assert_eq!(n, 1);
        }
    }
}

fn random_field(grid: &RadialGrid, seed: u64) -> PhysField {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<f64> = (0..6).map(|_| rng.random_range(-1.0..1.0)).collect();
    PhysField::from_fn(grid, |r| {
        Complex64::new(
            a[0] * (-r * r * (1.0 + a[1].abs())).exp() * (a[2] * 3.0 * r).cos(),
            a[3] * (-r * r / 2.0).exp() * (a[4] * 5.0 * r).sin() + a[5] * (-r * r).exp(),
        )
    })
}

#[test]
fn decomposition_pieces_add_up() {
    let grid = RadialGrid::new(40.0, 256).unwrap();
    let p = compute_params(0.5).unwrap().capped_for_grid(&grid).0;
    for seed in 0..10 {
        let f = random_field(&grid, 2 * seed);
        let g = random_field(&grid, 2 * seed + 1);
        let whole = product(&f, &g, true).unwrap();
        let d = |t| decompose_bilinear(&f, &g, t, &p, true).unwrap();
        let sum = &(&d(InteractionTag::HH) + &d(InteractionTag::LH)) + &d(InteractionTag::HL);
        assert!(sum.max_abs_diff(&whole) < 1e-8 * whole.sup_norm().max(1e-300));
        let hl = d(InteractionTag::HL);
        let split = &d(InteractionTag::AlphaL) + &d(InteractionTag::XL);
        assert!(split.max_abs_diff(&hl) < 1e-10 * hl.sup_norm().max(1e-300));
        let lh = d(InteractionTag::LH);
        let split = &d(InteractionTag::LAlpha) + &d(InteractionTag::LX);
        assert!(split.max_abs_diff(&lh) < 1e-10 * lh.sup_norm().max(1e-300));
    }
}

#[test]
fn decomposition_rejects_mixed_grids() {
    let p = compute_params(0.5).unwrap();
    let a = PhysField::zeros(&RadialGrid::new(10.0, 32).unwrap());
    let b = PhysField::zeros(&RadialGrid::new(11.0, 32).unwrap());
    assert!(decompose_bilinear(&a, &b, InteractionTag::HH, &p, true).is_err());
}

#[test]
fn grid_caps_separation() {
    let grid = RadialGrid::new(40.0, 128).unwrap();
    let (p, warning) = compute_params(0.5).unwrap().capped_for_grid(&grid);
    assert_eq!(p.k_alpha, 6);
    assert!(warning.is_some());
    let (q, none) = compute_params(0.5).unwrap().with_k_alpha(3).capped_for_grid(&grid);
    assert_eq!(q.k_alpha, 3);
    assert!(none.is_none());
}

#[test]
fn lemma_holds_for_sample_speeds() {
    for alpha in [0.3, 0.5, 0.8, 1.25, 2.0, 3.0] {
        let report = verify_lemma_bounds(alpha, None).unwrap();
        assert!(report.passed, "alpha = {alpha}: {report:?}");
        assert!(verify_params(&report.params).lower_bound_margin >= 1.0);
        assert_eq!(report.csv_rows().len(), 4);
    }
}

proptest! {
    #[test]
    fn duality_between_phase_families(
        xi in 0.0f64..20.0,
        eta in 0.0f64..20.0,
        cos in -1.0f64..1.0,
        alpha in 0.05f64..5.0,
    ) {
        let (xd, ed, cd) = dual_point(xi, eta, cos);
        for j in 1..=4 {
            let w = omega(j, xi, eta, cos, alpha).unwrap();
            let wt = omega_tilde(j, xd, ed, cd, alpha).unwrap();
            let sign = if j % 2 == 1 { -1.0 } else { 1.0 };
            prop_assert!((wt - sign * w).abs() < 1e-12 * (1.0 + w.abs()));
        }
    }
}
