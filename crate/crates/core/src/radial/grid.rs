use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Interior collocation grid of the ball of radius `R` with Dirichlet data.
///
/// Physical nodes are `r_j = j R / (M + 1)` and spectral nodes `xi_m = m pi / R`
/// for `j, m = 1..=M`. Index 0 of every value array corresponds to `j = 1`.
#[derive(Clone)]
pub struct RadialGrid {
    inner: Arc<Inner>,
}

struct Inner {
    radius: f64,
    modes: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for RadialGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialGrid")
            .field("radius", &self.inner.radius)
            .field("modes", &self.inner.modes)
            .finish()
    }
}

impl PartialEq for RadialGrid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.radius == other.inner.radius && self.inner.modes == other.inner.modes)
    }
}

impl RadialGrid {
    pub fn new(radius: f64, modes: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidGrid(format!("radius must be positive, got {radius}")));
        }
        if modes < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 modes, got {modes}")));
        }
        let fft = FftPlanner::new().plan_fft_forward(2 * (modes + 1));
        Ok(Self {
            inner: Arc::new(Inner { radius, modes, fft }),
        })
    }

    pub fn radius(&self) -> f64 {
        self.inner.radius
    }

    pub fn modes(&self) -> usize {
        self.inner.modes
    }

    pub fn dr(&self) -> f64 {
        self.inner.radius / (self.inner.modes + 1) as f64
    }

    pub fn dxi(&self) -> f64 {
        PI / self.inner.radius
    }

    /// Radius of value index `j` (0-based).
    pub fn r(&self, j: usize) -> f64 {
        (j + 1) as f64 * self.dr()
    }

    /// Frequency of coefficient index `m` (0-based).
    pub fn xi(&self, m: usize) -> f64 {
        (m + 1) as f64 * self.dxi()
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.modes()).map(|j| self.r(j)).collect()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.modes()).map(|m| self.xi(m)).collect()
    }

    pub fn xi_max(&self) -> f64 {
        self.xi(self.modes() - 1)
    }

    /// Dyadic indices `k` whose Littlewood-Paley piece can be nonzero on the grid.
    pub fn dyadic_range(&self) -> RangeInclusive<i32> {
        let lo = self.xi(0).log2().floor() as i32;
        let hi = self.xi_max().log2().ceil() as i32;
        lo..=hi
    }

    /// Number of coefficients kept by the two-thirds rule.
    pub fn dealias_len(&self) -> usize {
        2 * self.modes() / 3
    }

    /// Unnormalized DST-I: `out_m = sum_j w_j sin(j m pi / (M + 1))`, 1-based.
    pub(crate) fn sine_transform(&self, input: &[Complex64]) -> Vec<Complex64> {
        let m = self.modes();
        debug_assert_eq!(input.len(), m);
        let n = 2 * (m + 1);
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (j, &w) in input.iter().enumerate() {
            buf[j + 1] = w;
            buf[n - j - 1] = -w;
        }
        self.inner.fft.process(&mut buf);
        // X_m = -2i sum_j w_j sin(...)
        let half_i = Complex64::new(0.0, 0.5);
        buf[1..=m].iter().map(|x| x * half_i).collect()
    }

    /// Spectral coefficients `c_m = (4 pi dr / xi_m) sum_j r_j f_j sin(r_j xi_m)`.
    pub fn forward(&self, values: &[Complex64]) -> Vec<Complex64> {
        let dr = self.dr();
        let w: Vec<Complex64> = values
            .iter()
            .enumerate()
            .map(|(j, f)| f * self.r(j))
            .collect();
        let s = self.sine_transform(&w);
        s.into_iter()
            .enumerate()
            .map(|(m, x)| x * (4.0 * PI * dr / self.xi(m)))
            .collect()
    }

    /// Inverse of [`RadialGrid::forward`].
    pub fn inverse(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let dr = self.dr();
        let s: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * (self.xi(m) / (4.0 * PI * dr)))
            .collect();
        let norm = 2.0 / (self.modes() + 1) as f64;
        self.sine_transform(&s)
            .into_iter()
            .enumerate()
            .map(|(j, w)| w * (norm / self.r(j)))
            .collect()
    }
}
