use super::state::{from_first_order, ComplexState, RealState};
use crate::error::Result;

/// Conserved energy
/// `||<D>u||^2 + ||u_t||^2 + (||(alpha|D|)^{-1} n_t||^2 + ||n||^2) / 2 - int n u^2`.
pub fn energy(s: &RealState, alpha: f64) -> f64 {
    let u = s.u.re();
    let n = s.n.re();
    let kinetic = u.to_spectral().h1_norm().powi(2) + s.u_dot.re().l2_norm().powi(2);
    let ion = 0.5
        * (s.n_dot.re().to_spectral().weighted_norm_sqr(|xi| 1.0 / (alpha * xi).powi(2))
            + n.l2_norm().powi(2));
    let coupling = n.integrate_product(&u.pointwise_mul(&u).expect("same grid")).re;
    kinetic + ion - coupling
}

pub fn energy_of(c: &ComplexState, alpha: f64) -> Result<f64> {
    Ok(energy(&from_first_order(c, alpha)?, alpha))
}
