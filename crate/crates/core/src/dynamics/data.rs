use super::state::RealState;
use crate::radial::{PhysField, RadialGrid};

/// Size of first-order data, `||U||_{H^1} + ||N||_{L^2}`.
pub fn data_size(u: &PhysField, n: &PhysField) -> f64 {
    u.to_spectral().h1_norm() + n.l2_norm()
}

/// Gaussian data `u0 = n0 = a exp(-r^2 / w^2)` at rest, with `a` chosen so
/// that `||U0||_{H^1} + ||N0||_{L^2} = eps0`.
pub fn gaussian_data(grid: &RadialGrid, eps0: f64, width: f64) -> RealState {
    let g = PhysField::from_real_fn(grid, |r| (-(r / width).powi(2)).exp());
    let a = eps0 / data_size(&g, &g);
    let f = g.scale(a.into());
    let z = PhysField::zeros(grid);
    RealState::new(f.clone(), z.clone(), f, z).expect("same grid")
}
