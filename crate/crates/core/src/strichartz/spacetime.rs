use rayon::prelude::*;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::radial::{besov_norm, lebesgue_norm, PhysField, SpectralField};

/// Fewest samples a window must contain before a time norm is trusted.
pub const MIN_SAMPLES: usize = 64;

/// Time samples of one field component.
#[derive(Clone, Debug)]
pub struct FieldSeries {
    times: Vec<f64>,
    fields: Vec<PhysField>,
}

/// Which trajectory component to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    U,
    N,
}

impl FieldSeries {
    pub fn new(times: Vec<f64>, fields: Vec<PhysField>) -> Result<Self> {
        if times.len() != fields.len() {
            return Err(Error::LengthMismatch { expected: times.len(), got: fields.len() });
        }
        if !times.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Window("sample times must increase strictly".into()));
        }
        if let Some(f) = fields.first() {
            if fields.iter().any(|g| g.grid() != f.grid()) {
                return Err(Error::GridMismatch);
            }
        }
        Ok(Self { times, fields })
    }

    pub fn from_trajectory(traj: &Trajectory, part: Part) -> Self {
        let fields = traj
            .snapshots
            .iter()
            .map(|s| match part {
                Part::U => s.state.u.clone(),
                Part::N => s.state.n.clone(),
            })
            .collect();
        Self { times: traj.times(), fields }
    }

    /// `e^{it<D>} phi` sampled at `times`.
    pub fn free_kg(phi: &SpectralField, times: &[f64]) -> Result<Self> {
        let fields = times.par_iter().map(|&t| phi.kg_propagate(t).to_physical()).collect();
        Self::new(times.to_vec(), fields)
    }

    /// `e^{it alpha |D|} phi` sampled at `times`.
    pub fn free_wave(phi: &SpectralField, alpha: f64, times: &[f64]) -> Result<Self> {
        let fields = times.par_iter().map(|&t| phi.wave_propagate(t, alpha).to_physical()).collect();
        Self::new(times.to_vec(), fields)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn fields(&self) -> &[PhysField] {
        &self.fields
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Applies `f` to every sample.
    pub fn map(&self, f: impl Fn(&PhysField) -> PhysField + Sync + Send) -> Self {
        Self { times: self.times.clone(), fields: self.fields.par_iter().map(f).collect() }
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map(|f| f.scale(a.into()))
    }
}

/// Spatial norm taken at each time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpatialNorm {
    Lebesgue(f64),
    Besov { s: f64, p: f64, homogeneous: bool },
    Sobolev(f64),
}

impl SpatialNorm {
    pub fn eval(&self, f: &PhysField) -> Result<f64> {
        match *self {
            SpatialNorm::Lebesgue(p) => lebesgue_norm(f, p),
            SpatialNorm::Besov { s, p, homogeneous } => besov_norm(f, s, p, homogeneous),
            SpatialNorm::Sobolev(s) => Ok(f.to_spectral().sobolev_norm(s)),
        }
    }
}

/// Closed time interval `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub start: f64,
    pub end: f64,
}

impl Window {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && end > start) {
            return Err(Error::Window(format!("invalid window [{start}, {end}]")));
        }
        Ok(Self { start, end })
    }

    pub fn up_to(end: f64) -> Result<Self> {
        Self::new(0.0, end)
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }
}

/// Trapezoid `L^q` norm of samples `(t_i, y_i)`; `q = inf` gives the maximum.
pub fn time_lq(times: &[f64], values: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        return values.iter().fold(0.0, |m, &v| m.max(v));
    }
    let s: f64 = times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0].powf(q) + v[1].powf(q)))
        .sum();
    s.powf(1.0 / q)
}

/// `|| ||f(t)||_spatial ||_{L^q_t(window)}` over the samples inside `window`.
pub fn measure_spacetime_norm(series: &FieldSeries, q: f64, spatial: SpatialNorm, window: Window) -> Result<f64> {
    if q.is_nan() || q < 1.0 {
        return Err(Error::InvalidExponent(q));
    }
    let (first, last) = match (series.times.first(), series.times.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::Window("empty series".into())),
    };
    let slack = 1e-9 * window.end.abs().max(1.0);
    if window.start < first - slack || window.end > last + slack {
        return Err(Error::Window(format!(
            "window [{}, {}] exceeds samples [{first}, {last}]",
            window.start, window.end
        )));
    }
    let idx: Vec<usize> = (0..series.len())
        .filter(|&i| series.times[i] >= window.start - slack && series.times[i] <= window.end + slack)
        .collect();
    if idx.len() < MIN_SAMPLES {
        return Err(Error::Window(format!(
            "{} samples in window, need at least {MIN_SAMPLES}",
            idx.len()
        )));
    }
    let values = idx
        .par_iter()
        .map(|&i| spatial.eval(&series.fields[i]))
        .collect::<Result<Vec<f64>>>()?;
    let times: Vec<f64> = idx.iter().map(|&i| series.times[i]).collect();
    Ok(time_lq(&times, &values, q))
}

/// `n_dense` uniform samples on `[0, t_dense]` followed by `n_log` geometric
/// samples up to `t_end`, for integrands that decay after an initial layer.
pub fn layered_times(t_dense: f64, n_dense: usize, t_end: f64, n_log: usize) -> Vec<f64> {
    let mut t: Vec<f64> = (0..=n_dense).map(|i| t_dense * i as f64 / n_dense.max(1) as f64).collect();
    if t_end > t_dense && n_log > 0 {
        let ratio = (t_end / t_dense).powf(1.0 / n_log as f64);
        t.extend((1..=n_log).map(|i| t_dense * ratio.powi(i as i32)));
        if let Some(x) = t.last_mut() {
            *x = t_end;
        }
    }
    t
}
