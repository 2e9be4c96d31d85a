use num_complex::Complex64;

use super::config::{Model, SimConfig};
use super::state::ComplexState;
use crate::error::Result;
use crate::radial::{japanese, PhysField, RadialGrid, SpectralField};

type Coeffs = Vec<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Lawson (integrating-factor) RK4 for the first-order system in spectral
/// variables. The linear part `diag(i<xi>, i alpha xi)` is integrated exactly.
#[derive(Clone, Debug)]
pub struct Integrator {
    grid: RadialGrid,
    model: Model,
    linear: bool,
    keep: usize,
    kg: Vec<f64>,
    wave: Vec<f64>,
}

/// Integrating factors for one step size.
#[derive(Clone, Debug)]
pub struct Phases {
    h: f64,
    u_half: Coeffs,
    u_full: Coeffs,
    n_half: Coeffs,
    n_full: Coeffs,
}

impl Integrator {
    pub fn new(grid: &RadialGrid, config: &SimConfig) -> Result<Self> {
        config.validate()?;
        let keep = if config.dealias { grid.dealias_len() } else { grid.modes() };
        Ok(Self {
            grid: grid.clone(),
            model: config.model,
            linear: config.linear,
            keep,
            kg: grid.frequencies().iter().map(|&x| japanese(x)).collect(),
            wave: grid.frequencies().iter().map(|&x| config.alpha * x).collect(),
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn phases(&self, h: f64) -> Phases {
        let e = |w: &[f64], s: f64| -> Coeffs {
            w.iter().map(|&x| Complex64::from_polar(1.0, s * x)).collect()
        };
        Phases {
            h,
            u_half: e(&self.kg, 0.5 * h),
            u_full: e(&self.kg, h),
            n_half: e(&self.wave, 0.5 * h),
            n_full: e(&self.wave, h),
        }
    }

    fn truncate(&self, c: &[Complex64]) -> Coeffs {
        let mut out = c.to_vec();
        for z in out.iter_mut().skip(self.keep) {
            *z = Complex64::new(0.0, 0.0);
        }
        out
    }

    /// Spectral contribution of the nonlinearity to `(dU/dt, dN/dt)`.
    pub fn nonlinear(&self, u: &[Complex64], n: &[Complex64]) -> (Coeffs, Coeffs) {
        let m = self.grid.modes();
        if self.linear {
            return (vec![Complex64::new(0.0, 0.0); m], vec![Complex64::new(0.0, 0.0); m]);
        }
        let uu = self.grid.inverse(&self.truncate(u));
        let nn = self.grid.inverse(&self.truncate(n));
        let (a, b): (Coeffs, Coeffs) = match self.model {
            Model::Full => uu
                .iter()
                .zip(&nn)
                .map(|(u, n)| (Complex64::new(n.re * u.re, 0.0), Complex64::new(u.re * u.re, 0.0)))
                .unzip(),
            Model::Simplified => uu.iter().zip(&nn).map(|(u, n)| (n * u, u * u.conj())).unzip(),
        };
        let a = self.truncate(&self.grid.forward(&a));
        let b = self.truncate(&self.grid.forward(&b));
        let du = a.iter().zip(&self.kg).map(|(z, k)| -I * z / k).collect();
        let dn = b.iter().zip(&self.wave).map(|(z, w)| -I * z * w).collect();
        (du, dn)
    }

    /// Full time derivative of the first-order state, in physical space.
    pub fn rhs(&self, state: &ComplexState) -> Result<(PhysField, PhysField)> {
        let u = state.u.to_spectral();
        let n = state.n.to_spectral();
        let (du, dn) = self.nonlinear(u.coeffs(), n.coeffs());
        let du: Coeffs = du
            .iter()
            .zip(u.coeffs())
            .zip(&self.kg)
            .map(|((d, z), k)| d + I * k * z)
            .collect();
        let dn: Coeffs = dn
            .iter()
            .zip(n.coeffs())
            .zip(&self.wave)
            .map(|((d, z), w)| d + I * w * z)
            .collect();
        Ok((
            SpectralField::new(&self.grid, du)?.to_physical(),
            SpectralField::new(&self.grid, dn)?.to_physical(),
        ))
    }

    /// One Lawson RK4 step on spectral coefficients, in place.
    pub fn step(&self, u: &mut Coeffs, n: &mut Coeffs, p: &Phases) {
        let h = p.h;
        let mul = |e: &[Complex64], x: &[Complex64]| -> Coeffs { e.iter().zip(x).map(|(a, b)| a * b).collect() };
        let axpy = |x: &[Complex64], a: f64, y: &[Complex64]| -> Coeffs {
            x.iter().zip(y).map(|(x, y)| x + y * a).collect()
        };

        let (k1u, k1n) = self.nonlinear(u, n);
        let (k2u, k2n) = self.nonlinear(
            &mul(&p.u_half, &axpy(u, 0.5 * h, &k1u)),
            &mul(&p.n_half, &axpy(n, 0.5 * h, &k1n)),
        );
        let eu = mul(&p.u_half, u);
        let en = mul(&p.n_half, n);
        let (k3u, k3n) = self.nonlinear(&axpy(&eu, 0.5 * h, &k2u), &axpy(&en, 0.5 * h, &k2n));
        let fu = mul(&p.u_full, u);
        let fn_ = mul(&p.n_full, n);
        let (k4u, k4n) = self.nonlinear(
            &axpy(&fu, h, &mul(&p.u_half, &k3u)),
            &axpy(&fn_, h, &mul(&p.n_half, &k3n)),
        );
        let c = h / 6.0;
        for m in 0..u.len() {
            u[m] = fu[m]
                + c * (p.u_full[m] * k1u[m] + 2.0 * p.u_half[m] * (k2u[m] + k3u[m]) + k4u[m]);
            n[m] = fn_[m]
                + c * (p.n_full[m] * k1n[m] + 2.0 * p.n_half[m] * (k2n[m] + k3n[m]) + k4n[m]);
        }
    }
}

/// `(dU/dt, dN/dt)` for the configured model.
pub fn rhs(state: &ComplexState, config: &SimConfig) -> Result<(PhysField, PhysField)> {
    Integrator::new(state.grid(), config)?.rhs(state)
}

/// Advance a state by one Lawson RK4 step of size `dt`.
pub fn step(state: &ComplexState, dt: f64, config: &SimConfig) -> Result<ComplexState> {
    let integ = Integrator::new(state.grid(), config)?;
    let mut u = state.u.to_spectral().into_coeffs();
    let mut n = state.n.to_spectral().into_coeffs();
    integ.step(&mut u, &mut n, &integ.phases(dt));
    let grid = state.grid();
    ComplexState::new(
        SpectralField::new(grid, u)?.to_physical(),
        SpectralField::new(grid, n)?.to_physical(),
        state.t + dt,
    )
}
