use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::bilinear::QuadratureConfig;
use super::terms::NormalForm;
use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::radial::{besov_norm, japanese, lebesgue_norm, PhysField, RadialGrid, SpectralField};
use crate::resonance::{decompose_bilinear, InteractionTag, ResonanceParams};
use crate::strichartz::q_of_eps;

/// Fixed-time estimates whose constants the sweep measures. Each ratio is
/// `lhs / rhs` of a bilinear or trilinear bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Estimate {
    /// `||<D>^{-1} Omega(N, U)||_{H^1} / (||N||_2 ||U||_{H^1})`.
    BoundaryU,
    /// `||D Omega~(U, U)||_2 / ||U||_{H^1}^2`.
    BoundaryN,
    /// `||<D>^{-1} Omega(D|U|^2, U)||_{H^1} / (||U||_6^2 ||U||_{H^1})`.
    CubicWave,
    /// `||<D>^{-1} Omega(N, <D>^{-1}(N U))||_{L^{6/5} | B^{11/6}_{6/5}} / (||N||_2^2 ||U||_6)`.
    CubicKg,
    /// `||D Omega~(<D>^{-1}(N U), U)||_2 / (||N||_2 ||U||_6^2)`.
    CubicTilde,
    /// `||<D>^{-1}(N U)_{LH}||_{H^1} / (||N||_{B'^{-1/4-e}_{q(-e)}} ||U||_{B'^{1/4+e}_{q(e)}})`.
    ProductLH,
    /// As `ProductLH` for the `HH` part.
    ProductHH,
    /// `||D(U conj U)_{HH}||_2 / ||U||_{X|Y}^2` with the Besov parts of `X|Y`.
    WaveHH,
}

impl Estimate {
    pub const ALL: [Estimate; 8] = [
        Estimate::BoundaryU,
        Estimate::BoundaryN,
        Estimate::CubicWave,
        Estimate::CubicKg,
        Estimate::CubicTilde,
        Estimate::ProductLH,
        Estimate::ProductHH,
        Estimate::WaveHH,
    ];

    fn name(self) -> &'static str {
        match self {
            Estimate::BoundaryU => "boundary_u",
            Estimate::BoundaryN => "boundary_n",
            Estimate::CubicWave => "cubic_wave",
            Estimate::CubicKg => "cubic_kg",
            Estimate::CubicTilde => "cubic_tilde",
            Estimate::ProductLH => "product_lh",
            Estimate::ProductHH => "product_hh",
            Estimate::WaveHH => "wave_hh",
        }
    }
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub radius: f64,
    pub modes: Vec<usize>,
    pub trials: usize,
    /// Modes carrying random data. The same functions are sampled on every
    /// grid; with `band <= M/3` on the coarsest grid their products are resolved.
    pub band: usize,
    pub eps: f64,
    pub seed: u64,
    pub quad: QuadratureConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            radius: 40.0,
            modes: vec![128, 256, 512],
            trials: 50,
            band: 42,
            eps: 0.05,
            seed: 2024,
            quad: QuadratureConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub estimate: Estimate,
    pub modes: usize,
    pub trial: usize,
    pub ratio: f64,
}

/// Per-estimate constant (maximum ratio over trials) at each resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateConstants {
    pub estimate: Estimate,
    pub by_modes: Vec<(usize, f64)>,
}

impl EstimateConstants {
    /// `max C / min C` across resolutions.
    pub fn spread(&self) -> f64 {
        let max = self.by_modes.iter().map(|c| c.1).fold(f64::MIN, f64::max);
        let min = self.by_modes.iter().map(|c| c.1).fold(f64::MAX, f64::min);
        max / min
    }

    pub fn finite(&self) -> bool {
        self.by_modes.iter().all(|c| c.1.is_finite() && c.1 > 0.0)
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub params: ResonanceParams,
    pub rows: Vec<SweepRow>,
    pub constants: Vec<EstimateConstants>,
}

impl SweepReport {
    /// Every constant is finite, positive and stable within `factor`.
    pub fn stable_within(&self, factor: f64) -> bool {
        self.constants.iter().all(|c| c.finite() && c.spread() <= factor)
    }

    pub const CSV_HEADER: [&'static str; 4] = ["estimate", "trial", "ratio", "modes"];

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| vec![r.estimate.to_string(), r.trial.to_string(), fmt_f64(r.ratio), r.modes.to_string()])
            .collect()
    }
}

/// Random complex coefficients, weighted by `<xi>^{-1}`, on the first `band`
/// modes. The draw does not depend on the grid size, so grids sharing a radius
/// sample the same function.
pub fn random_band_field(grid: &RadialGrid, band: usize, rng: &mut ChaCha8Rng) -> Result<PhysField> {
    if band > grid.dealias_len() {
        return Err(Error::InvalidConfig(format!(
            "band {band} exceeds the dealiased length {} of M = {}",
            grid.dealias_len(),
            grid.modes()
        )));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.modes()];
    for (m, c) in coeffs.iter_mut().take(band).enumerate() {
        let (a, b): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        *c = Complex64::new(a, b) / japanese(grid.xi(m));
    }
    Ok(SpectralField::new(grid, coeffs)?.to_physical())
}

struct Norms {
    eps: f64,
}

impl Norms {
    fn h1(f: &SpectralField) -> f64 {
        f.h1_norm()
    }

    fn split(f: &SpectralField) -> (PhysField, PhysField) {
        let low = f.lp_project_le(-1);
        let high = f.try_sub(&low).expect("same grid");
        (low.to_physical(), high.to_physical())
    }

    /// `||P_{<0} f||_{B'^{1/4+e}_{q(e)}} + ||P_{>=0} f||_{B^{2/3}_{q(e)}}`.
    fn xy(&self, f: &SpectralField) -> Result<f64> {
        let (low, high) = Self::split(f);
        let q = q_of_eps(self.eps);
        Ok(besov_norm(&low, 0.25 + self.eps, q, true)? + besov_norm(&high, 2.0 / 3.0, q, false)?)
    }

    /// `||P_{<0} f||_{6/5} + ||P_{>=0} f||_{B^{11/6}_{6/5}}`.
    fn kg_cubic(f: &SpectralField) -> Result<f64> {
        let (low, high) = Self::split(f);
        Ok(lebesgue_norm(&low, 1.2)? + besov_norm(&high, 11.0 / 6.0, 1.2, false)?)
    }
}

fn trial_ratios(nf: &NormalForm, norms: &Norms, n: &PhysField, u: &PhysField) -> Result<Vec<(Estimate, f64)>> {
    let p = nf.params();
    let (ns, us) = (n.to_spectral(), u.to_spectral());
    let n2 = ns.l2_norm();
    let u_h1 = Norms::h1(&us);
    let u6 = lebesgue_norm(u, 6.0)?;
    let inv_j = |xi: f64| 1.0 / japanese(xi);
    let h = nf.kg_source(&ns, &us)?;
    let q = q_of_eps(norms.eps);
    let qm = q_of_eps(-norms.eps);
    let n_besov = besov_norm(n, -0.25 - norms.eps, qm, true)?;
    let u_besov = besov_norm(u, 0.25 + norms.eps, q, true)?;
    let product = |tag| -> Result<f64> {
        let part = decompose_bilinear(n, u, tag, p, nf.dealias())?.to_spectral();
        Ok(Norms::h1(&part.apply_real(inv_j)))
    };
    let wave_hh = {
        let part = decompose_bilinear(u, &u.conj(), InteractionTag::HH, p, nf.dealias())?.to_spectral();
        part.apply_real(|xi| xi).l2_norm()
    };
    let xy = norms.xy(&us)?;
    Ok(vec![
        (Estimate::BoundaryU, Norms::h1(&nf.boundary_u(&ns, &us)?) / (n2 * u_h1)),
        (Estimate::BoundaryN, nf.omega_tilde(&us, &us)?.apply_real(|xi| xi).l2_norm() / (u_h1 * u_h1)),
        (
            Estimate::CubicWave,
            Norms::h1(&nf.omega(&nf.wave_source(&us)?, &us)?.apply_real(inv_j)) / (u6 * u6 * u_h1),
        ),
        (Estimate::CubicKg, Norms::kg_cubic(&nf.omega(&ns, &h)?.apply_real(inv_j))? / (n2 * n2 * u6)),
        (Estimate::CubicTilde, nf.omega_tilde(&h, &us)?.apply_real(|xi| xi).l2_norm() / (n2 * u6 * u6)),
        (Estimate::ProductLH, product(InteractionTag::LH)? / (n_besov * u_besov)),
        (Estimate::ProductHH, product(InteractionTag::HH)? / (n_besov * u_besov)),
        (Estimate::WaveHH, wave_hh / (xy * xy)),
    ])
}

/// Measures every [`Estimate`] on `trials` random band-limited pairs `(N, U)`
/// at each resolution in `config.modes`, with the same `k_alpha` throughout.
pub fn boundedness_sweep(params: &ResonanceParams, config: &SweepConfig) -> Result<SweepReport> {
    if config.modes.is_empty() || config.trials == 0 {
        return Err(Error::InvalidConfig("sweep needs at least one resolution and one trial".into()));
    }
    if !(config.eps > 0.0 && config.eps < 0.3) {
        return Err(Error::InvalidConfig(format!("eps must lie in (0, 0.3), got {}", config.eps)));
    }
    if config.band == 0 {
        return Err(Error::InvalidConfig("sweep band must be positive".into()));
    }
    let norms = Norms { eps: config.eps };
    let mut rows = Vec::new();
    for &m in &config.modes {
        let grid = RadialGrid::new(config.radius, m)?;
        let nf = NormalForm::new(&grid, params, config.quad, true)?;
        let per_trial = (0..config.trials)
            .into_par_iter()
            .map(|trial| {
                let stream = |k: u64| ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(2 * trial as u64 + k));
                let n = random_band_field(&grid, config.band, &mut stream(0))?;
                let u = random_band_field(&grid, config.band, &mut stream(1))?;
                trial_ratios(&nf, &norms, &n, &u).map(|r| (trial, r))
            })
            .collect::<Result<Vec<_>>>()?;
        for (trial, ratios) in per_trial {
            rows.extend(ratios.into_iter().map(|(estimate, ratio)| SweepRow { estimate, modes: m, trial, ratio }));
        }
    }
    let constants = Estimate::ALL
        .iter()
        .map(|&estimate| EstimateConstants {
            estimate,
            by_modes: config
                .modes
                .iter()
                .map(|&m| {
                    let c = rows
                        .iter()
                        .filter(|r| r.estimate == estimate && r.modes == m)
                        .map(|r| r.ratio)
                        .fold(0.0, |a: f64, r| if a.is_finite() && r.is_finite() { a.max(r) } else { f64::NAN });
                    (m, c)
                })
                .collect(),
        })
        .collect();
    Ok(SweepReport { params: params.clone(), rows, constants })
}
