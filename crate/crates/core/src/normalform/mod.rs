//! Normal-form (Shatah) operators: the bilinear symbols `Omega`, `Omega~`,
//! their quadrature, the boundary and cubic terms, and checks of the
//! resulting integral equations.

mod bilinear;
mod duhamel;
mod sweep;
mod symbol;
mod terms;

pub use bilinear::{bilinear_apply, BilinearPlan, QuadratureConfig};
pub use duhamel::{duhamel_residual, duhamel_residuals, simpson_weights, Component, DuhamelResiduals};
pub use sweep::{
    boundedness_sweep, random_band_field, Estimate, EstimateConstants, SweepConfig, SweepReport, SweepRow,
};
pub use symbol::{xl_cutoff, BilinearSymbol, SymbolKind};
pub use terms::{boundary_term_n, boundary_term_u, cubic_terms, CubicTerms, NormalForm};
