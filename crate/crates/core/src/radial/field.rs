use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::cutoff::{chi, chi_le};
use super::grid::RadialGrid;
use super::japanese;
use crate::error::{Error, Result};

/// Radial field sampled at the physical nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysField {
    grid: RadialGrid,
    values: Vec<Complex64>,
}

/// Radial field given by its coefficients at the spectral nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: RadialGrid,
    coeffs: Vec<Complex64>,
}

fn check_len(grid: &RadialGrid, len: usize) -> Result<()> {
    if len != grid.modes() {
        return Err(Error::LengthMismatch {
            expected: grid.modes(),
            got: len,
        });
    }
    Ok(())
}

fn check_grid(a: &RadialGrid, b: &RadialGrid) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

impl PhysField {
    pub fn new(grid: &RadialGrid, values: Vec<Complex64>) -> Result<Self> {
        check_len(grid, values.len())?;
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub fn from_real(grid: &RadialGrid, values: &[f64]) -> Result<Self> {
        Self::new(grid, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(grid: &RadialGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); grid.modes()],
        }
    }

    pub fn from_fn(grid: &RadialGrid, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            grid: grid.clone(),
            values: grid.radii().into_iter().map(f).collect(),
        }
    }

    pub fn from_real_fn(grid: &RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn to_spectral(&self) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.grid.forward(&self.values),
        }
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn re(&self) -> Self {
        self.map(|z| Complex64::new(z.re, 0.0))
    }

    pub fn im(&self) -> Self {
        self.map(|z| Complex64::new(z.im, 0.0))
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, a: Complex64) -> Self {
        self.map(|z| z * a)
    }

    /// Pointwise product.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        check_grid(&self.grid, &other.grid)?;
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_grid(&self.grid, &other.grid)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_grid(&self.grid, &other.grid)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `L^2(R^3)` norm by the radial quadrature.
    pub fn l2_norm(&self) -> f64 {
        let dr = self.grid.dr();
        let s: f64 = self
            .values
            .iter()
            .enumerate()
            .map(|(j, z)| z.norm_sqr() * self.grid.r(j).powi(2))
            .sum();
        (4.0 * PI * dr * s).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `sup_j |f_j - g_j|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `int f g dx` over the ball (no conjugation).
    pub fn integrate_product(&self, other: &Self) -> Complex64 {
        let dr = self.grid.dr();
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(j, (a, b))| a * b * self.grid.r(j).powi(2))
            .sum();
        s * (4.0 * PI * dr)
    }
}

impl SpectralField {
    pub fn new(grid: &RadialGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        check_len(grid, coeffs.len())?;
        Ok(Self {
            grid: grid.clone(),
            coeffs,
        })
    }

    pub fn zeros(grid: &RadialGrid) -> Self {
        Self {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.modes()],
        }
    }

    pub fn from_fn(grid: &RadialGrid, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            grid: grid.clone(),
            coeffs: grid.frequencies().into_iter().map(f).collect(),
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn to_physical(&self) -> PhysField {
        PhysField {
            grid: self.grid.clone(),
            values: self.grid.inverse(&self.coeffs),
        }
    }

    /// Multiply by `m(xi)`; fails if the symbol is not finite at a grid node.
    pub fn apply_multiplier(&self, m: impl Fn(f64) -> Complex64) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let xi = self.grid.xi(i);
            let s = m(xi);
            if !(s.re.is_finite() && s.im.is_finite()) {
                return Err(Error::NonFiniteMultiplier { xi });
            }
            coeffs.push(c * s);
        }
        Ok(Self {
            grid: self.grid.clone(),
            coeffs,
        })
    }

    /// Real symbols that are finite by construction.
    pub fn apply_real(&self, m: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * m(self.grid.xi(i)))
                .collect(),
        }
    }

    /// `e^{i t <D>}`.
    pub fn kg_propagate(&self, t: f64) -> Self {
        self.phase(|xi| t * japanese(xi))
    }

    /// `e^{i t alpha |D|}`.
    pub fn wave_propagate(&self, t: f64, alpha: f64) -> Self {
        self.phase(|xi| t * alpha * xi)
    }

    fn phase(&self, theta: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * Complex64::from_polar(1.0, theta(self.grid.xi(i))))
                .collect(),
        }
    }

    /// `<D>^s`.
    pub fn bessel(&self, s: f64) -> Self {
        self.apply_real(|xi| japanese(xi).powf(s))
    }

    /// `|D|^s`; every grid frequency is positive so negative `s` is fine.
    pub fn riesz(&self, s: f64) -> Self {
        self.apply_real(|xi| xi.powf(s))
    }

    pub fn lp_project(&self, k: i32) -> Self {
        self.apply_real(|xi| chi(k, xi))
    }

    pub fn lp_project_le(&self, k: i32) -> Self {
        self.apply_real(|xi| chi_le(k, xi))
    }

    /// Two-thirds rule: zero every coefficient past `2M/3`.
    pub fn dealias(&self) -> Self {
        let keep = self.grid.dealias_len();
        let mut coeffs = self.coeffs.clone();
        for c in coeffs.iter_mut().skip(keep) {
            *c = Complex64::new(0.0, 0.0);
        }
        Self {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// `int |f^|^2 w(xi) dxi / (2 pi)^3` over R^3, i.e. `||w^{1/2}(D) f||_2^2`.
    pub fn weighted_norm_sqr(&self, w: impl Fn(f64) -> f64) -> f64 {
        let dxi = self.grid.dxi();
        let s: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let xi = self.grid.xi(i);
                c.norm_sqr() * xi * xi * w(xi)
            })
            .sum();
        s * dxi / (2.0 * PI * PI)
    }

    pub fn l2_norm(&self) -> f64 {
        self.weighted_norm_sqr(|_| 1.0).sqrt()
    }

    pub fn h1_norm(&self) -> f64 {
        self.weighted_norm_sqr(|xi| 1.0 + xi * xi).sqrt()
    }

    /// `H^s` norm, `||<D>^s f||_2`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        self.weighted_norm_sqr(|xi| japanese(xi).powf(2.0 * s)).sqrt()
    }

    /// Off-grid value by linear interpolation: constant below `xi_1`,
    /// tapering to zero on `[xi_M, xi_M + dxi]`, zero beyond.
    pub fn interpolate(&self, xi: f64) -> Complex64 {
        let (lo, frac) = interp_index(&self.grid, xi);
        let get = |i: usize| self.coeffs.get(i).copied().unwrap_or_default();
        get(lo) * (1.0 - frac) + get(lo + 1) * frac
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_grid(&self.grid, &other.grid)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_grid(&self.grid, &other.grid)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }
}

/// Lower coefficient index and weight for linear interpolation at `xi`.
/// The upper index may equal `M`, which stands for an implicit zero.
pub(crate) fn interp_index(grid: &RadialGrid, xi: f64) -> (usize, f64) {
    let m = grid.modes();
    let p = xi / grid.dxi() - 1.0;
    if p <= 0.0 {
        return (0, 0.0);
    }
    if p >= m as f64 {
        return (m, 0.0);
    }
    let lo = p.floor() as usize;
    (lo, p - lo as f64)
}

/// Product of two fields as used by the evolution: with `dealias` both
/// inputs and the output are truncated by the two-thirds rule.
pub fn product(f: &PhysField, g: &PhysField, dealias: bool) -> Result<PhysField> {
    if !dealias {
        return f.pointwise_mul(g);
    }
    let f = f.to_spectral().dealias().to_physical();
    let g = g.to_spectral().dealias().to_physical();
    Ok(f.pointwise_mul(&g)?.to_spectral().dealias().to_physical())
}

macro_rules! field_ops {
    ($t:ident) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                self.try_add(rhs).expect("fields on different grids")
            }
        }

        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self.try_sub(rhs).expect("fields on different grids")
            }
        }

        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                self.scale(Complex64::new(-1.0, 0.0))
            }
        }

        impl Mul<Complex64> for &$t {
            type Output = $t;
            fn mul(self, a: Complex64) -> $t {
                self.scale(a)
            }
        }

        impl Mul<f64> for &$t {
            type Output = $t;
            fn mul(self, a: f64) -> $t {
                self.scale(Complex64::new(a, 0.0))
            }
        }
    };
}

field_ops!(PhysField);
field_ops!(SpectralField);
