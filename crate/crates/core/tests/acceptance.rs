//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use kgz_core::dynamics::{
    from_first_order, gaussian_data, oracle_evolve, restrict, run_first_order, run_simulation, ComplexState, Model,
    OracleParams, SimConfig,
};
use kgz_core::normalform::{boundedness_sweep, duhamel_residuals, QuadratureConfig, SweepConfig};
use kgz_core::radial::{product, RadialGrid, SpectralField};
use kgz_core::resonance::{compute_params, decompose_bilinear, verify_lemma_bounds, InteractionTag};
use kgz_core::strichartz::{
    random_profile, ratio_spread, resolution_norm, scattering_profile, strichartz_scan, witness_grid,
    witness_sequence, AdmissiblePair, Flavor, Window,
};
use kgz_core::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { pass, detail })
}

fn random_coeffs(rng: &mut ChaCha8Rng, grid: &RadialGrid, band: usize) -> SpectralField {
    let mut c = vec![Complex64::new(0.0, 0.0); grid.modes()];
    for z in c.iter_mut().take(band) {
        *z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    SpectralField::new(grid, c).expect("length matches")
}

fn transform_fidelity() -> Result<Outcome> {
    let grid = RadialGrid::new(20.0, 256)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut roundtrip, mut parseval) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let band = rng.random_range(8..=256);
        let f = random_coeffs(&mut rng, &grid, band);
        let phys = f.to_physical();
        let back = phys.to_spectral();
        let scale = f.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let err = f.coeffs().iter().zip(back.coeffs()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let again = back.to_physical();
        roundtrip = roundtrip.max(err / scale).max(again.max_abs_diff(&phys) / phys.sup_norm());
        parseval = parseval.max((phys.l2_norm() - f.l2_norm()).abs() / f.l2_norm());
    }
    outcome(
        roundtrip < 1e-12 && parseval < 1e-10,
        format!("100 fields, M = 256: roundtrip {roundtrip:.2e}, Parseval {parseval:.2e}"),
    )
}

fn eigenmode_dynamics() -> Result<Outcome> {
    let grid = RadialGrid::new(20.0, 256)?;
    let mut cfg = SimConfig::new(0.5, 20.0, 256);
    cfg.linear = true;
    cfg.horizon = 10.0;
    cfg.dt = 0.05;
    let mut worst = 0.0f64;
    for m in [0, 7, 40, 120] {
        let mode = |a: f64| {
            let mut c = vec![Complex64::new(0.0, 0.0); 256];
            c[m] = Complex64::new(a, 0.0);
            SpectralField::new(&grid, c).map(|f| f.to_physical())
        };
        let traj = run_first_order(&cfg, &ComplexState::new(mode(1.0)?, mode(2.0)?, 0.0)?)?;
        let end = &traj.last().state;
        let xi = grid.xi(m);
        let want_u = Complex64::from_polar(1.0, 10.0 * (1.0 + xi * xi).sqrt());
        let want_n = Complex64::from_polar(2.0, 10.0 * 0.5 * xi);
        worst = worst
            .max((end.u.to_spectral().coeffs()[m] - want_u).norm())
            .max((end.n.to_spectral().coeffs()[m] - want_n).norm() / 2.0);
    }
    outcome(worst < 1e-10, format!("4 modes, T = 10: max phase error {worst:.2e}"))
}

fn energy_conservation() -> Result<Outcome> {
    let grid = RadialGrid::new(40.0, 512)?;
    let mut cfg = SimConfig::new(0.5, 40.0, 512);
    cfg.horizon = 10.0;
    cfg.dt = 1e-3;
    cfg.snapshot_stride = 100;
    let traj = run_simulation(&cfg, &gaussian_data(&grid, 1e-2, 1.0))?;
    let e0 = traj.snapshots[0].energy;
    let drift = traj.snapshots.iter().map(|s| ((s.energy - e0) / e0).abs()).fold(0.0, f64::max);
    outcome(drift < 1e-6, format!("T = 10, dt = 1e-3, M = 512: relative drift {drift:.2e}"))
}

fn oracle_equivalence() -> Result<Outcome> {
    let grid = RadialGrid::new(20.0, 256)?;
    let mut cfg = SimConfig::new(0.5, 20.0, 256);
    cfg.horizon = 1.0;
    cfg.dt = 5e-3;
    let init = gaussian_data(&grid, 0.5, 1.0);
    let spectral = from_first_order(&run_simulation(&cfg, &init)?.last().state, 0.5)?;
    let fd = oracle_evolve(&init, 0.5, 1.0, OracleParams::default())?;
    let mut worst = 0.0f64;
    for (a, b) in [(&spectral.u, &fd.u), (&spectral.n, &fd.n)] {
        let b = restrict(b, &grid)?;
        worst = worst.max(a.try_sub(&b)?.l2_norm() / a.l2_norm());
    }
    outcome(worst < 1e-2, format!("T = 1, oracle at 4x resolution: relative L2 difference {worst:.2e}"))
}

fn decomposition_algebra() -> Result<Outcome> {
    let grid = RadialGrid::new(40.0, 256)?;
    let p = compute_params(0.5)?.capped_for_grid(&grid).0;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut complete, mut split) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let f = random_coeffs(&mut rng, &grid, 85).to_physical();
        let g = random_coeffs(&mut rng, &grid, 85).to_physical();
        let whole = product(&f, &g, true)?;
        let d = |t| decompose_bilinear(&f, &g, t, &p, true);
        let sum = &(&d(InteractionTag::HH)? + &d(InteractionTag::LH)?) + &d(InteractionTag::HL)?;
        complete = complete.max(sum.max_abs_diff(&whole) / whole.sup_norm());
        let hl = d(InteractionTag::HL)?;
        let parts = &d(InteractionTag::AlphaL)? + &d(InteractionTag::XL)?;
        split = split.max(parts.max_abs_diff(&hl) / hl.sup_norm());
    }
    outcome(
        complete < 1e-8 && split < 1e-10,
        format!("50 pairs: HH+LH+HL {complete:.2e}, aL+XL vs HL {split:.2e}"),
    )
}

fn lemma_verification() -> Result<Outcome> {
    let mut pass = true;
    let mut notes = Vec::new();
    for alpha in [0.3, 0.5, 0.8, 1.25, 2.0, 3.0] {
        let report = verify_lemma_bounds(alpha, None)?;
        let min = report.rows.iter().map(|r| r.min_ratio).fold(f64::INFINITY, f64::min);
        pass &= report.passed && report.param_check.passed && min > 0.0;
        notes.push(format!("{alpha}: {min:.3}"));
    }
    outcome(pass, format!("smallest ratio per alpha [{}]", notes.join(", ")))
}

fn boundedness() -> Result<Outcome> {
    let p = compute_params(0.5)?.with_k_alpha(6);
    let report = boundedness_sweep(&p, &SweepConfig::default())?;
    let worst = report.constants.iter().map(|c| c.spread()).fold(0.0, f64::max);
    outcome(
        report.stable_within(2.0),
        format!("{} estimates, M in {{128, 256, 512}}: largest spread {worst:.3}", report.constants.len()),
    )
}

fn duhamel() -> Result<Outcome> {
    let grid = RadialGrid::new(40.0, 512)?;
    let p = compute_params(0.5)?.capped_for_grid(&grid).0;
    let init = gaussian_data(&grid, 1e-2, 1.0);
    let run = |dt: f64| -> Result<_> {
        let mut cfg = SimConfig::new(0.5, 40.0, 512);
        cfg.model = Model::Simplified;
        cfg.horizon = 2.0;
        cfg.dt = dt;
        cfg.snapshot_stride = 5;
        duhamel_residuals(&run_simulation(&cfg, &init)?, &p, QuadratureConfig::default())
    };
    let (coarse, fine) = (run(0.02)?, run(0.01)?);
    let pass = coarse.u < 1e-3 && coarse.n < 1e-3 && fine.u <= 0.5 * coarse.u && fine.n <= 0.5 * coarse.n;
    outcome(
        pass,
        format!(
            "U {:.2e} -> {:.2e}, N {:.2e} -> {:.2e} under dt and spacing halving",
            coarse.u, fine.u, coarse.n, fine.n
        ),
    )
}

fn strichartz_scaling() -> Result<Outcome> {
    let grid = RadialGrid::new(100.0, 2560)?;
    let phi = random_profile(&grid, 7);
    let window = Window::up_to(50.0)?;
    let ks = [1, 2, 3, 4, 5];
    let mut pass = true;
    let mut notes = Vec::new();
    for (pair, label) in [
        (AdmissiblePair::new(2.0, 5.0, Flavor::Wave)?, "wave (2,5)"),
        (AdmissiblePair::new(2.0, 4.5, Flavor::Schrodinger)?, "KG (2,4.5)"),
    ] {
        let table = strichartz_scan(&grid, &ks, &pair, 0.5, window, &phi)?;
        pass &= table.slope_error() <= 0.15 && table.warnings.is_empty();
        notes.push(format!("{label} slope {:.3} vs {:.3}", table.slope, table.predicted));
    }
    outcome(pass, notes.join(", "))
}

fn sharpness() -> Result<Outcome> {
    let grid = witness_grid(6)?;
    let pair = AdmissiblePair::new(2.0, 4.0, Flavor::Schrodinger)?;
    let reports = witness_sequence(&grid, &[2, 3, 4, 5, 6], &pair, 1.0)?;
    let min = reports.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let spread = ratio_spread(&reports);
    outcome(
        min > 0.0 && spread <= 4.0,
        format!("k = 2..6 at (2,4): smallest ratio {min:.3}, spread {spread:.3}"),
    )
}

fn scattering() -> Result<Outcome> {
    let grid = RadialGrid::new(100.0, 768)?;
    let mut cfg = SimConfig::new(0.5, 100.0, 768);
    cfg.horizon = 20.0;
    cfg.dt = 0.01;
    cfg.snapshot_stride = 5;
    let traj = run_simulation(&cfg, &gaussian_data(&grid, 1e-2, 1.0))?;
    let report = scattering_profile(&traj, &[5.0, 10.0, 20.0])?;
    let (a, b) = (report.cauchy[0], report.cauchy[1]);
    let s10 = resolution_norm(&traj, 0.05, Window::up_to(10.0)?)?.total();
    let s20 = resolution_norm(&traj, 0.05, Window::up_to(20.0)?)?.total();
    let pass = b.d_u < 0.8 * a.d_u && b.d_n < 0.8 * a.d_n && s20 <= 2.0 * s10 && s10 <= 2.0 * s20;
    outcome(
        pass,
        format!(
            "d_U {:.2e} -> {:.2e}, d_N {:.2e} -> {:.2e}, S(10) {s10:.3e}, S(20) {s20:.3e}",
            a.d_u, b.d_u, a.d_n, b.d_n
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("transform fidelity", transform_fidelity),
        ("exact linear dynamics", eigenmode_dynamics),
        ("energy conservation", energy_conservation),
        ("oracle equivalence", oracle_equivalence),
        ("decomposition algebra", decomposition_algebra),
        ("frequency lemma", lemma_verification),
        ("normal-form boundedness", boundedness),
        ("Duhamel residual", duhamel),
        ("Strichartz scaling", strichartz_scaling),
        ("sharpness witness", sharpness),
        ("scattering", scattering),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!(
            "criterion {:>2} {:<24} {}  {detail} [{:.1}s]",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
