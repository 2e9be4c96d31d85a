//! Radial Strichartz exponents, space-time norms of sampled evolutions, dyadic
//! scaling scans, the optimality witness and scattering diagnostics.

mod exponents;
mod resolution;
mod scan;
mod scattering;
mod sharpness;
mod spacetime;

pub use exponents::{beta_exponent, check_admissible, q_of_eps, AdmissiblePair, Flavor};
pub use resolution::{resolution_norm, ResolutionNorms};
pub use scan::{fit_line, random_profile, strichartz_scan, ScanRow, ScanTable};
pub use scattering::{scattering_profile, CauchyRow, Profile, ScatteringReport};
pub use sharpness::{ratio_spread, sharpness_witness, witness_grid, witness_profile, witness_sequence, WitnessReport};
pub use spacetime::{
    layered_times, measure_spacetime_norm, time_lq, FieldSeries, Part, SpatialNorm, Window, MIN_SAMPLES,
};
