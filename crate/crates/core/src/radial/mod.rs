//! Radial pseudospectral discretization on a ball with Dirichlet data.

mod cutoff;
mod field;
mod grid;
mod norms;

pub use cutoff::{active_blocks, chi, chi_le, eta0};
pub use field::{product, PhysField, SpectralField};
pub(crate) use field::interp_index;
pub use grid::RadialGrid;
pub use norms::{besov_blocks, besov_norm, lebesgue_norm};

/// `<x> = (1 + x^2)^{1/2}`.
pub fn japanese(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}
