use num_complex::Complex64;
use rayon::prelude::*;

use super::exponents::{AdmissiblePair, Flavor};
use super::scan::{block_times, check_block};
use super::spacetime::{measure_spacetime_norm, FieldSeries, SpatialNorm, Window};
use crate::error::{Error, Result};
use crate::radial::{RadialGrid, SpectralField};

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub k: i32,
    pub window: Window,
    /// `||e^{it<D>} P_k phi||_{L^q_t L^r_x}` over the window.
    pub measured: f64,
    /// `||P_k phi||_{L^2}`.
    pub data_l2: f64,
    /// `C(q, r, k)`.
    pub constant: f64,
    /// `measured / (constant * data_l2)`.
    pub ratio: f64,
}

/// Radial data whose rescaled profile at scale `2^k` is `f = amplitude 1_{[0,10]}`:
/// `phi^(xi) = amplitude 1_{xi <= 10 2^k} / (2^k xi)`.
pub fn witness_profile(grid: &RadialGrid, k: i32, amplitude: f64) -> SpectralField {
    let scale = 2f64.powi(k);
    SpectralField::from_fn(grid, |xi| {
        let f = if xi <= 10.0 * scale { amplitude } else { 0.0 };
        Complex64::new(f / (scale * xi), 0.0)
    })
}

/// Measures the Klein-Gordon free flow of the witness over `0 <= t <= 2^k` and
/// compares with the lower-bound constant.
pub fn sharpness_witness(grid: &RadialGrid, k: i32, pair: &AdmissiblePair, amplitude: f64) -> Result<WitnessReport> {
    if k < 1 {
        return Err(Error::InvalidConfig(format!("witness needs k >= 1, got {k}")));
    }
    if pair.flavor != Flavor::Schrodinger {
        return Err(Error::InvalidConfig("the witness is stated for the Klein-Gordon flow".into()));
    }
    if amplitude == 0.0 || !amplitude.is_finite() {
        return Err(Error::InvalidConfig("witness amplitude must be finite and nonzero".into()));
    }
    check_block(grid, k)?;
    let end = 2f64.powi(k);
    if end > grid.radius() / 2.0 {
        return Err(Error::Horizon(format!(
            "window 2^{k} = {end} exceeds the reflection-safe horizon R/2 = {}",
            grid.radius() / 2.0
        )));
    }
    let window = Window::up_to(end)?;
    let block = witness_profile(grid, k, amplitude).lp_project(k);
    let series = FieldSeries::free_kg(&block, &block_times(k, end))?;
    let measured = measure_spacetime_norm(&series, pair.q, SpatialNorm::Lebesgue(pair.r), window)?;
    let data_l2 = block.l2_norm();
    let constant = pair.witness_constant(k);
    Ok(WitnessReport { k, window, measured, data_l2, constant, ratio: measured / (constant * data_l2) })
}

pub fn witness_sequence(grid: &RadialGrid, ks: &[i32], pair: &AdmissiblePair, amplitude: f64) -> Result<Vec<WitnessReport>> {
    ks.par_iter().map(|&k| sharpness_witness(grid, k, pair, amplitude)).collect()
}

/// `max ratio / min ratio` over a sequence.
pub fn ratio_spread(reports: &[WitnessReport]) -> f64 {
    let max = reports.iter().map(|r| r.ratio).fold(f64::MIN, f64::max);
    let min = reports.iter().map(|r| r.ratio).fold(f64::MAX, f64::min);
    max / min
}

/// Grid with room for blocks up to `k_max` and windows up to `2^{k_max}`.
pub fn witness_grid(k_max: i32) -> Result<RadialGrid> {
    let radius = 2f64.powi(k_max + 1);
    let xi_max = 1.25 * 2f64.powi(k_max + 1);
    let modes = (xi_max * radius / std::f64::consts::PI).ceil() as usize;
    RadialGrid::new(radius, modes)
}
