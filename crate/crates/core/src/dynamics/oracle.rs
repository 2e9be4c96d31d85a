//! Independent second-order finite-difference solver for the real system,
//! used only to cross-check the spectral integrator.

use num_complex::Complex64;

use super::state::RealState;
use crate::error::{Error, Result};
use crate::radial::{PhysField, RadialGrid, SpectralField};

#[derive(Clone, Copy, Debug)]
pub struct OracleParams {
    /// Fine grid has `refine * (M + 1) - 1` interior nodes so coarse nodes nest.
    pub refine: usize,
    /// Leapfrog step; defaults to half the CFL limit.
    pub dt: Option<f64>,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self { refine: 4, dt: None }
    }
}

fn laplacian(w: &[f64], inv_h2: f64, out: &mut [f64]) {
    let m = w.len();
    for j in 0..m {
        let l = if j > 0 { w[j - 1] } else { 0.0 };
        let r = if j + 1 < m { w[j + 1] } else { 0.0 };
        out[j] = (l - 2.0 * w[j] + r) * inv_h2;
    }
}

/// Refine spectral data onto the nested fine grid by zero padding.
fn refine_field(f: &PhysField, fine: &RadialGrid) -> Vec<f64> {
    let c = f.re().to_spectral();
    let mut padded = vec![Complex64::new(0.0, 0.0); fine.modes()];
    padded[..c.coeffs().len()].copy_from_slice(c.coeffs());
    SpectralField::new(fine, padded)
        .expect("length matches")
        .to_physical()
        .values()
        .iter()
        .map(|z| z.re)
        .collect()
}

/// Evolve `(u, u_t, n, n_t)` to time `horizon` for the full real system
/// `u_tt = Delta u - u + n u`, `n_tt = alpha^2 Delta (n - u^2)` in the
/// variables `w = r f` with leapfrog time stepping. Returns the state on the
/// fine grid.
pub fn oracle_evolve(s: &RealState, alpha: f64, horizon: f64, params: OracleParams) -> Result<RealState> {
    if params.refine == 0 {
        return Err(Error::InvalidConfig("refinement factor must be positive".into()));
    }
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::InvalidConfig(format!("horizon must be positive, got {horizon}")));
    }
    let coarse = s.grid();
    let fine = RadialGrid::new(coarse.radius(), params.refine * (coarse.modes() + 1) - 1)?;
    let h = fine.dr();
    let limit = h / alpha.max(1.0);
    let dt_max = params.dt.unwrap_or(0.5 * limit);
    if dt_max > limit {
        return Err(Error::Cfl { dt: dt_max, limit });
    }
    let steps = (horizon / dt_max).ceil() as usize;
    let dt = horizon / steps as f64;
    let r = fine.radii();
    let m = fine.modes();
    let inv_h2 = 1.0 / (h * h);
    let a2 = alpha * alpha;

    let scale = |v: Vec<f64>| -> Vec<f64> { v.iter().zip(&r).map(|(x, r)| x * r).collect() };
    let wu0 = scale(refine_field(&s.u, &fine));
    let vu0 = scale(refine_field(&s.u_dot, &fine));
    let wn0 = scale(refine_field(&s.n, &fine));
    let vn0 = scale(refine_field(&s.n_dot, &fine));

    let mut lap = vec![0.0; m];
    let mut lap2 = vec![0.0; m];
    let mut sq = vec![0.0; m];
    let mut accel = |wu: &[f64], wn: &[f64], au: &mut [f64], an: &mut [f64]| {
        laplacian(wu, inv_h2, &mut lap);
        for j in 0..m {
            au[j] = lap[j] - wu[j] + wn[j] / r[j] * wu[j];
            sq[j] = wu[j] * wu[j] / r[j];
        }
        laplacian(wn, inv_h2, &mut lap);
        laplacian(&sq, inv_h2, &mut lap2);
        for j in 0..m {
            an[j] = a2 * (lap[j] - lap2[j]);
        }
    };

    let mut au = vec![0.0; m];
    let mut an = vec![0.0; m];
    accel(&wu0, &wn0, &mut au, &mut an);
    let mut prev_u = wu0.clone();
    let mut prev_n = wn0.clone();
    let mut cur_u: Vec<f64> = (0..m).map(|j| wu0[j] + dt * vu0[j] + 0.5 * dt * dt * au[j]).collect();
    let mut cur_n: Vec<f64> = (0..m).map(|j| wn0[j] + dt * vn0[j] + 0.5 * dt * dt * an[j]).collect();
    // One extra step past the horizon for the centered velocity.
    for _ in 1..=steps {
        accel(&cur_u, &cur_n, &mut au, &mut an);
        for j in 0..m {
            let nu = 2.0 * cur_u[j] - prev_u[j] + dt * dt * au[j];
            let nn = 2.0 * cur_n[j] - prev_n[j] + dt * dt * an[j];
            prev_u[j] = cur_u[j];
            prev_n[j] = cur_n[j];
            cur_u[j] = nu;
            cur_n[j] = nn;
        }
        if !cur_u.iter().chain(&cur_n).all(|x| x.is_finite()) {
            return Err(Error::BlowUp { t: s.t + horizon });
        }
    }
    // prev = w(T), cur = w(T + dt); recompute w(T - dt) by reversing one step.
    accel(&prev_u, &prev_n, &mut au, &mut an);
    let back_u: Vec<f64> = (0..m).map(|j| 2.0 * prev_u[j] - cur_u[j] + dt * dt * au[j]).collect();
    let back_n: Vec<f64> = (0..m).map(|j| 2.0 * prev_n[j] - cur_n[j] + dt * dt * an[j]).collect();

    let unscale = |w: &[f64]| -> PhysField {
        let v: Vec<f64> = w.iter().zip(&r).map(|(x, r)| x / r).collect();
        PhysField::from_real(&fine, &v).expect("length matches")
    };
    let vel = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(a, b)| (a - b) / (2.0 * dt)).collect() };
    let mut out = RealState::new(
        unscale(&prev_u),
        unscale(&vel(&cur_u, &back_u)),
        unscale(&prev_n),
        unscale(&vel(&cur_n, &back_n)),
    )?;
    out.t = s.t + horizon;
    Ok(out)
}

/// Restrict a fine-grid field to the coarse grid it was refined from.
pub fn restrict(f: &PhysField, coarse: &RadialGrid) -> Result<PhysField> {
    let fine = f.grid();
    let factor = (fine.modes() + 1) / (coarse.modes() + 1);
    if factor * (coarse.modes() + 1) != fine.modes() + 1 || fine.radius() != coarse.radius() {
        return Err(Error::GridMismatch);
    }
    let v = (0..coarse.modes()).map(|j| f.values()[(j + 1) * factor - 1]).collect();
    PhysField::new(coarse, v)
}
