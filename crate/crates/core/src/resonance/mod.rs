//! Resonance functions, frequency-regime bookkeeping and the parameters of
//! the non-resonance lemma.

mod lemma;
mod omega;
mod params;
mod tags;

pub use lemma::{verify_lemma_bounds, BoundRow, LemmaGrid, LemmaReport, SignChange};
pub use omega::{difference_norm, dual_point, omega, omega_tilde};
pub use params::{
    compute_params, fast_crossings, resonance_profile, verify_params, ParamCheck, Regime, ResonanceParams, THETA,
};
pub use tags::{decompose_bilinear, in_support, resonance_cutoff, InteractionTag};
