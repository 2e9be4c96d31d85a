//! Klein-Gordon-Zakharov dynamics: first-order variables, time stepping,
//! energy and an independent finite-difference oracle.

mod config;
mod data;
mod energy;
mod integrator;
mod oracle;
mod state;
mod trajectory;

pub use config::{Model, SimConfig};
pub use data::{data_size, gaussian_data};
pub use energy::{energy, energy_of};
pub use integrator::{rhs, step, Integrator, Phases};
pub use oracle::{oracle_evolve, restrict, OracleParams};
pub use state::{from_first_order, to_first_order, ComplexState, RealState};
pub use trajectory::{run_first_order, run_simulation, Snapshot, Trajectory};
