use std::path::Path;

use kgz_core::dynamics::{gaussian_data, run_simulation, Model, SimConfig, Trajectory};
use kgz_core::io::{export_trajectory, fmt_f64, write_csv, write_field_csv, FieldData};
use kgz_core::normalform::{boundedness_sweep, duhamel_residuals, QuadratureConfig, SweepConfig, SweepReport};
use kgz_core::resonance::{compute_params, verify_lemma_bounds, LemmaGrid, LemmaReport, ResonanceParams};
use kgz_core::strichartz::{
    random_profile, ratio_spread, resolution_norm, scattering_profile, strichartz_scan, witness_profile,
    witness_sequence, AdmissiblePair, Flavor, ScanTable, ScatteringReport, Window,
};
use kgz_core::RadialGrid;

use crate::config::{Config, ConfigError};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Values derived while running, appended to the manifest.
pub type Resolved = Vec<(String, String)>;

fn positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

fn grid(cfg: &Config) -> Result<RadialGrid> {
    let r = cfg.checked("grid.R", positive, "must be positive")?;
    let m = cfg.checked("grid.M", |m: usize| m >= 2, "must be at least 2")?;
    Ok(RadialGrid::new(r, m)?)
}

fn alpha(cfg: &Config) -> Result<f64> {
    Ok(cfg.checked("sim.alpha", |a: f64| positive(a) && (a - 1.0).abs() > 1e-6, "must be positive and not 1")?)
}

fn sim_config(cfg: &Config) -> Result<SimConfig> {
    let mut s = SimConfig::new(alpha(cfg)?, cfg.get("grid.R")?, cfg.get("grid.M")?);
    s.dt = cfg.checked("sim.dt", positive, "must be positive")?;
    s.horizon = cfg.checked("sim.T", |t: f64| t.is_finite() && t >= 0.0, "must be non-negative")?;
    s.model = cfg.get("sim.model")?;
    s.dealias = cfg.get("sim.dealias")?;
    s.snapshot_stride = cfg.checked("sim.stride", |k: usize| k >= 1, "must be at least 1")?;
    s.linear = cfg.get("sim.linear")?;
    Ok(s)
}

fn simulate_data(cfg: &Config) -> Result<Trajectory> {
    let grid = grid(cfg)?;
    let sim = sim_config(cfg)?;
    let eps0: f64 = cfg.get("data.eps0")?;
    let width = cfg.checked("data.width", positive, "must be positive")?;
    Ok(run_simulation(&sim, &gaussian_data(&grid, eps0, width))?)
}

/// Lemma constants, with `k_alpha` either fixed by the config or capped to `grid`.
fn resonance_params(cfg: &Config, grid: Option<&RadialGrid>, resolved: &mut Resolved) -> Result<ResonanceParams> {
    let p = compute_params(alpha(cfg)?)?;
    let p = match (cfg.optional::<i32>("resonance.k_alpha")?, grid) {
        (Some(_), _) => p.with_k_alpha(cfg.checked("resonance.k_alpha", |k: i32| k >= 1, "must be at least 1")?),
        (None, Some(g)) => {
            let (p, warning) = p.capped_for_grid(g);
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            p
        }
        (None, None) => p,
    };
    resolved.push(("resolved.k_alpha".into(), p.k_alpha.to_string()));
    Ok(p)
}

fn pair(cfg: &Config) -> Result<AdmissiblePair> {
    let flavor: Flavor = cfg.get("strichartz.flavor")?;
    Ok(AdmissiblePair::new(cfg.get("strichartz.q")?, cfg.get("strichartz.r")?, flavor)?)
}

fn block_range(cfg: &Config) -> Result<Vec<i32>> {
    let lo: i32 = cfg.get("strichartz.k_min")?;
    let hi: i32 = cfg.get("strichartz.k_max")?;
    if hi < lo {
        return Err(ConfigError(format!("strichartz.k_max = {hi} is below strichartz.k_min = {lo}")).into());
    }
    Ok((lo..=hi).collect())
}

pub fn simulate(cfg: &Config, out: &Path) -> Result<Resolved> {
    let traj = simulate_data(cfg)?;
    export_trajectory(&traj, out)?;
    let (first, last) = (&traj.snapshots[0], traj.last());
    println!(
        "{} snapshots to t = {}; energy {} -> {} (relative drift {:.3e})",
        traj.snapshots.len(),
        last.t(),
        first.energy,
        last.energy,
        (last.energy - first.energy) / first.energy.abs().max(f64::MIN_POSITIVE)
    );
    Ok(vec![("resolved.snapshots".into(), traj.snapshots.len().to_string())])
}

pub fn resonance(cfg: &Config, out: &Path) -> Result<Resolved> {
    let alpha = alpha(cfg)?;
    let mut lemma = LemmaGrid::for_params(&compute_params(alpha)?);
    lemma.n_xi = cfg.checked("lemma.n_xi", |n: usize| n >= 2, "must be at least 2")?;
    lemma.n_eta = cfg.checked("lemma.n_eta", |n: usize| n >= 2, "must be at least 2")?;
    lemma.n_cos = cfg.checked("lemma.n_cos", |n: usize| n >= 2, "must be at least 2")?;
    let report = verify_lemma_bounds(alpha, Some(lemma))?;
    write_csv(&out.join("lemma.csv"), &LemmaReport::CSV_HEADER, &report.csv_rows())?;
    for row in &report.rows {
        println!(
            "{:>3} omega_{} / {:<7} min {:.6e}  max {:.6e}",
            row.region, row.index, row.denominator, row.min_ratio, row.max_ratio
        );
    }
    let s = &report.sign_change;
    println!("omega_{} across the annulus: {:.6e} -> {:.6e}", s.index, s.left, s.right);
    if !report.passed {
        return Err(CliError::Check(format!("frequency lemma bounds fail for alpha = {alpha}")));
    }
    println!("lemma bounds hold for alpha = {alpha}");
    Ok(vec![("resolved.k_alpha".into(), report.params.k_alpha.to_string())])
}

pub fn normalform_check(cfg: &Config, out: &Path) -> Result<Resolved> {
    let sim = sim_config(cfg)?;
    if sim.model != Model::Simplified {
        return Err(ConfigError("sim.model = 'full': the integral equations are checked for the simplified model".into()).into());
    }
    let quad = QuadratureConfig { nodes: cfg.checked("quad.nodes", |n: usize| n >= 1, "must be at least 1")? };
    let mut resolved = Vec::new();
    let traj = simulate_data(cfg)?;
    let p = resonance_params(cfg, Some(traj.grid()), &mut resolved)?;
    let r = duhamel_residuals(&traj, &p, quad)?;
    write_csv(
        &out.join("residual.csv"),
        &["component", "residual"],
        &[vec!["u".into(), fmt_f64(r.u)], vec!["n".into(), fmt_f64(r.n)]],
    )?;
    println!("Duhamel residuals: U {:.3e}, N {:.3e}", r.u, r.n);

    let sweep = SweepConfig {
        radius: cfg.get("grid.R")?,
        modes: cfg.list("sweep.modes")?,
        trials: cfg.checked("sweep.trials", |n: usize| n >= 1, "must be at least 1")?,
        band: cfg.checked("sweep.band", |n: usize| n >= 1, "must be at least 1")?,
        eps: cfg.checked("sweep.eps", |e: f64| e > 0.0 && e < 0.3, "must lie in (0, 0.3)")?,
        seed: cfg.get("sweep.seed")?,
        quad,
    };
    let coarsest = *sweep.modes.iter().min().ok_or_else(|| ConfigError("sweep.modes is empty".into()))?;
    let mut sweep_resolved = Vec::new();
    let sp = resonance_params(cfg, Some(&RadialGrid::new(sweep.radius, coarsest)?), &mut sweep_resolved)?;
    resolved.push(("resolved.sweep.k_alpha".into(), sp.k_alpha.to_string()));
    let report = boundedness_sweep(&sp, &sweep)?;
    write_csv(&out.join("sweep.csv"), &SweepReport::CSV_HEADER, &report.csv_rows())?;
    let mut rows = Vec::new();
    for c in &report.constants {
        for &(m, v) in &c.by_modes {
            rows.push(vec![c.estimate.to_string(), m.to_string(), fmt_f64(v), fmt_f64(c.spread())]);
        }
        println!("{:<11} constants {:?}  spread {:.4}", c.estimate.to_string(), c.by_modes, c.spread());
    }
    write_csv(&out.join("sweep_constants.csv"), &["estimate", "modes", "constant", "spread"], &rows)?;
    Ok(resolved)
}

pub fn strichartz_scan_cmd(cfg: &Config, out: &Path) -> Result<Resolved> {
    let grid = grid(cfg)?;
    let pair = pair(cfg)?;
    let window = Window::up_to(cfg.checked("strichartz.window", positive, "must be positive")?)?;
    let profile = random_profile(&grid, cfg.get("strichartz.seed")?);
    let table = strichartz_scan(&grid, &block_range(cfg)?, &pair, alpha(cfg)?, window, &profile)?;
    write_csv(&out.join("scan.csv"), &ScanTable::CSV_HEADER, &table.csv_rows())?;
    write_csv(
        &out.join("fit.csv"),
        &["slope", "intercept", "predicted"],
        &[vec![fmt_f64(table.slope), fmt_f64(table.intercept), fmt_f64(table.predicted)]],
    )?;
    write_field_csv(&out.join("profile.csv"), &FieldData::Spec(profile))?;
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{} ({}, {}): slope {:.4}, predicted {:.4}, error {:.4}",
        pair.flavor,
        pair.q,
        pair.r,
        table.slope,
        table.predicted,
        table.slope_error()
    );
    Ok(table.warnings.iter().enumerate().map(|(i, w)| (format!("warning.{i}"), w.clone())).collect())
}

pub fn sharpness(cfg: &Config, out: &Path) -> Result<Resolved> {
    let grid = grid(cfg)?;
    let pair = pair(cfg)?;
    let amplitude: f64 = cfg.get("strichartz.amplitude")?;
    let ks = block_range(cfg)?;
    let reports = witness_sequence(&grid, &ks, &pair, amplitude)?;
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                fmt_f64(r.window.end),
                fmt_f64(r.measured),
                fmt_f64(r.data_l2),
                fmt_f64(r.constant),
                fmt_f64(r.ratio),
            ]
        })
        .collect();
    write_csv(&out.join("witness.csv"), &["k", "window_end", "measured", "data_l2", "constant", "ratio"], &rows)?;
    for &k in &ks {
        write_field_csv(&out.join(format!("witness_k{k}.csv")), &FieldData::Spec(witness_profile(&grid, k, amplitude)))?;
    }
    for r in &reports {
        println!("k = {}: ratio {:.4}", r.k, r.ratio);
    }
    println!("spread {:.4}", ratio_spread(&reports));
    Ok(Vec::new())
}

pub fn scatter_diag(cfg: &Config, out: &Path) -> Result<Resolved> {
    let checkpoints: Vec<f64> = cfg.list("scatter.checkpoints")?;
    let eps = cfg.checked("scatter.eps", |e: f64| e > 0.0 && e < 0.3, "must lie in (0, 0.3)")?;
    let traj = simulate_data(cfg)?;
    let report = scattering_profile(&traj, &checkpoints)?;
    write_csv(&out.join("cauchy.csv"), &ScatteringReport::CSV_HEADER, &report.csv_rows())?;
    let mut rows = Vec::new();
    for &t in &checkpoints {
        let s = resolution_norm(&traj, eps, Window::up_to(t)?)?;
        rows.push(vec![fmt_f64(t), fmt_f64(s.x()), fmt_f64(s.y()), fmt_f64(s.n()), fmt_f64(s.total())]);
        println!("S({t}) = {:.6e}", s.total());
    }
    write_csv(&out.join("resolution.csv"), &["window_end", "x", "y", "n", "total"], &rows)?;
    for c in &report.cauchy {
        println!("d({}, {}): U {:.4e}, N {:.4e}", c.t1, c.t2, c.d_u, c.d_n);
    }
    for (u, n) in report.contraction() {
        println!("contraction: U {u:.4}, N {n:.4}");
    }
    Ok(Vec::new())
}

pub fn params(cfg: &Config) -> Result<Resolved> {
    let mut resolved = Vec::new();
    let p = resonance_params(cfg, None, &mut resolved)?;
    println!("alpha = {}", p.alpha);
    println!("regime = {:?}", p.regime);
    println!("c_alpha = {}", p.c);
    if let Some(r0) = p.r0() {
        println!("r0 = {r0}");
    }
    println!("delta_alpha = {}", p.delta);
    println!("rho = {}", p.rho);
    println!("k_alpha = {}", p.k_alpha);
    Ok(resolved)
}
