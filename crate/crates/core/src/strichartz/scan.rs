use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::exponents::{AdmissiblePair, Flavor};
use super::spacetime::{layered_times, measure_spacetime_norm, FieldSeries, SpatialNorm, Window};
use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::radial::{RadialGrid, SpectralField};

/// One dyadic block of a scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub k: i32,
    /// `||e^{itw(D)} P_k phi||_{L^q_t L^r_x}` over the window.
    pub norm: f64,
    /// `||P_k phi||_{L^2}`.
    pub data_l2: f64,
    /// `log2(norm / data_l2)`.
    pub log2_ratio: f64,
    /// Deviation of `log2_ratio` from the fitted line.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct ScanTable {
    pub pair: AdmissiblePair,
    pub alpha: f64,
    pub window: Window,
    pub rows: Vec<ScanRow>,
    pub slope: f64,
    pub intercept: f64,
    /// Slope the estimate predicts, `beta(q, r)`.
    pub predicted: f64,
    pub warnings: Vec<String>,
}

impl ScanTable {
    pub fn slope_error(&self) -> f64 {
        (self.slope - self.predicted).abs()
    }

    pub const CSV_HEADER: [&'static str; 5] = ["k", "norm", "data_l2", "log2_ratio", "residual"];

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    fmt_f64(r.norm),
                    fmt_f64(r.data_l2),
                    fmt_f64(r.log2_ratio),
                    fmt_f64(r.residual),
                ]
            })
            .collect()
    }
}

/// Unit-`L^2` profile `a(log2 xi) / xi` with a random trigonometric amplitude
/// `a` in `[0.5, 1.5]`. The amplitude varies on the dyadic scale, so each
/// block `P_k phi` stays concentrated near the origin.
pub fn random_profile(grid: &RadialGrid, seed: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms: Vec<(f64, f64)> = (0..3)
        .map(|_| (rng.random_range(-1.0..1.0) / 6.0, rng.random_range(0.0..TAU)))
        .collect();
    let f = SpectralField::from_fn(grid, |xi| {
        let x = xi.log2();
        let a: f64 = 1.0
            + terms
                .iter()
                .enumerate()
                .map(|(j, (c, th))| c * (TAU * (j + 1) as f64 * x / 8.0 + th).cos())
                .sum::<f64>();
        Complex64::new(a / xi, 0.0)
    });
    let n = f.l2_norm();
    f.scale(Complex64::new(1.0 / n, 0.0))
}

/// Samples resolving the initial layer of block `k` and its decay up to `end`.
pub(crate) fn block_times(k: i32, end: f64) -> Vec<f64> {
    let layer = (8.0 * 2f64.powi(-k)).min(end);
    layered_times(layer, 64, end, 192)
}

pub(crate) fn check_block(grid: &RadialGrid, k: i32) -> Result<()> {
    let lo = 2f64.powi(k - 1);
    let hi = 2f64.powi(k + 1);
    if lo < grid.xi(0) || hi > grid.xi_max() {
        return Err(Error::InvalidConfig(format!(
            "block k={k} spans [{lo}, {hi}], outside the grid band [{}, {}]",
            grid.xi(0),
            grid.xi_max()
        )));
    }
    Ok(())
}

/// Free evolution of `P_k phi` measured in `L^q_t L^r_x` for each `k`, with a
/// least-squares fit of `log2(norm / ||P_k phi||)` against `k`.
pub fn strichartz_scan(
    grid: &RadialGrid,
    ks: &[i32],
    pair: &AdmissiblePair,
    alpha: f64,
    window: Window,
    profile: &SpectralField,
) -> Result<ScanTable> {
    if profile.grid() != grid {
        return Err(Error::GridMismatch);
    }
    if ks.len() < 2 {
        return Err(Error::InvalidConfig("a scan needs at least two blocks".into()));
    }
    for &k in ks {
        check_block(grid, k)?;
    }
    let speed = match pair.flavor {
        Flavor::Schrodinger => 1.0,
        Flavor::Wave => alpha,
    };
    let mut warnings = Vec::new();
    if window.end * speed.max(1.0) > grid.radius() / 2.0 {
        warnings.push(format!(
            "reflection guard: window end {} exceeds R/(2 max(1, speed)) = {}",
            window.end,
            grid.radius() / (2.0 * speed.max(1.0))
        ));
    }
    let measured = ks
        .par_iter()
        .map(|&k| {
            let block = profile.lp_project(k);
            let times: Vec<f64> = block_times(k, window.end).into_iter().filter(|&t| t >= window.start).collect();
            let series = match pair.flavor {
                Flavor::Schrodinger => FieldSeries::free_kg(&block, &times)?,
                Flavor::Wave => FieldSeries::free_wave(&block, alpha, &times)?,
            };
            let norm = measure_spacetime_norm(&series, pair.q, SpatialNorm::Lebesgue(pair.r), window)?;
            Ok((k, norm, block.l2_norm()))
        })
        .collect::<Result<Vec<_>>>()?;
    let xs: Vec<f64> = measured.iter().map(|m| f64::from(m.0)).collect();
    let ys: Vec<f64> = measured.iter().map(|m| (m.1 / m.2).log2()).collect();
    let (slope, intercept) = fit_line(&xs, &ys);
    let rows = measured
        .iter()
        .zip(&ys)
        .map(|(&(k, norm, data_l2), &y)| ScanRow {
            k,
            norm,
            data_l2,
            log2_ratio: y,
            residual: y - (slope * f64::from(k) + intercept),
        })
        .collect();
    Ok(ScanTable { pair: *pair, alpha, window, rows, slope, intercept, predicted: pair.beta, warnings })
}

/// Least-squares `(slope, intercept)`.
pub fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}
