use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::radial::{japanese, PhysField, RadialGrid};

/// Second-order data `(u, u_t, n, n_t)` at time `t`.
#[derive(Clone, Debug)]
pub struct RealState {
    pub u: PhysField,
    pub u_dot: PhysField,
    pub n: PhysField,
    pub n_dot: PhysField,
    pub t: f64,
}

/// First-order variables `U = u - i <D>^{-1} u_t`, `N = n - i (alpha |D|)^{-1} n_t`.
#[derive(Clone, Debug)]
pub struct ComplexState {
    pub u: PhysField,
    pub n: PhysField,
    pub t: f64,
}

impl RealState {
    pub fn new(u: PhysField, u_dot: PhysField, n: PhysField, n_dot: PhysField) -> Result<Self> {
        let g = u.grid();
        if u_dot.grid() != g || n.grid() != g || n_dot.grid() != g {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            u,
            u_dot,
            n,
            n_dot,
            t: 0.0,
        })
    }

    pub fn zeros(grid: &RadialGrid) -> Self {
        let z = PhysField::zeros(grid);
        Self {
            u: z.clone(),
            u_dot: z.clone(),
            n: z.clone(),
            n_dot: z,
            t: 0.0,
        }
    }

    pub fn grid(&self) -> &RadialGrid {
        self.u.grid()
    }

    /// Largest imaginary part over the four fields.
    pub fn max_imag(&self) -> f64 {
        [&self.u, &self.u_dot, &self.n, &self.n_dot]
            .iter()
            .flat_map(|f| f.values().iter().map(|z| z.im.abs()))
            .fold(0.0, f64::max)
    }
}

impl ComplexState {
    pub fn new(u: PhysField, n: PhysField, t: f64) -> Result<Self> {
        if u.grid() != n.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { u, n, t })
    }

    pub fn grid(&self) -> &RadialGrid {
        self.u.grid()
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidConfig(format!("alpha must be positive, got {alpha}")));
    }
    Ok(())
}

pub fn to_first_order(s: &RealState, alpha: f64) -> Result<ComplexState> {
    check_alpha(alpha)?;
    let mi = Complex64::new(0.0, -1.0);
    let v = s.u_dot.to_spectral().apply_real(|xi| 1.0 / japanese(xi)).to_physical();
    let w = s.n_dot.to_spectral().apply_real(|xi| 1.0 / (alpha * xi)).to_physical();
    ComplexState::new(
        s.u.try_add(&v.scale(mi))?,
        s.n.try_add(&w.scale(mi))?,
        s.t,
    )
}

pub fn from_first_order(c: &ComplexState, alpha: f64) -> Result<RealState> {
    check_alpha(alpha)?;
    let u_dot = c.u.im().to_spectral().apply_real(|xi| -japanese(xi)).to_physical().re();
    let n_dot = c.n.im().to_spectral().apply_real(|xi| -alpha * xi).to_physical().re();
    let mut s = RealState::new(c.u.re(), u_dot, c.n.re(), n_dot)?;
    s.t = c.t;
    Ok(s)
}
