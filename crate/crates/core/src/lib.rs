//! Radial pseudospectral simulation and analysis of the Klein-Gordon-Zakharov
//! system in three space dimensions.

pub mod error;
pub mod dynamics;
pub mod io;
pub mod normalform;
pub mod radial;
pub mod resonance;
pub mod strichartz;

pub use error::{Error, Result};
pub use radial::{PhysField, RadialGrid, SpectralField};
