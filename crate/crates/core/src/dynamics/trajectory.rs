use super::config::SimConfig;
use super::energy::energy_of;
use super::integrator::Integrator;
use super::state::{to_first_order, ComplexState, RealState};
use crate::error::{Error, Result};
use crate::radial::{RadialGrid, SpectralField};

/// Recorded state with its scalar diagnostics.
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub state: ComplexState,
    pub energy: f64,
    pub u_l2: f64,
    pub n_l2: f64,
}

impl Snapshot {
    pub fn t(&self) -> f64 {
        self.state.t
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub config: SimConfig,
    pub step: f64,
    pub snapshots: Vec<Snapshot>,
}

impl Trajectory {
    pub fn grid(&self) -> &RadialGrid {
        self.snapshots[0].state.grid()
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.t()).collect()
    }

    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("trajectory is never empty")
    }
}

fn snapshot(state: ComplexState, alpha: f64) -> Result<Snapshot> {
    Ok(Snapshot {
        energy: energy_of(&state, alpha)?,
        u_l2: state.u.l2_norm(),
        n_l2: state.n.l2_norm(),
        state,
    })
}

/// Integrate from real data over `[0, horizon]`. The step actually used is
/// `horizon / ceil(horizon / dt)`, never larger than `config.dt`.
pub fn run_simulation(config: &SimConfig, init: &RealState) -> Result<Trajectory> {
    config.validate()?;
    let grid = init.grid();
    if grid.radius() != config.radius || grid.modes() != config.modes {
        return Err(Error::InvalidConfig(format!(
            "initial data lives on R = {}, M = {} but config asks for R = {}, M = {}",
            grid.radius(),
            grid.modes(),
            config.radius,
            config.modes
        )));
    }
    run_first_order(config, &to_first_order(init, config.alpha)?)
}

/// As [`run_simulation`], starting from first-order data.
pub fn run_first_order(config: &SimConfig, init: &ComplexState) -> Result<Trajectory> {
    config.validate()?;
    let grid = init.grid().clone();
    let integ = Integrator::new(&grid, config)?;
    let t0 = init.t;
    let steps = if config.horizon == 0.0 {
        0
    } else {
        (config.horizon / config.dt - 1e-9).ceil().max(1.0) as usize
    };
    let h = if steps == 0 { config.dt } else { config.horizon / steps as f64 };
    let phases = integ.phases(h);

    let mut snapshots = vec![snapshot(init.clone(), config.alpha)?];
    let norm0 = init.u.l2_norm() + init.n.l2_norm();
    let mut u = init.u.to_spectral().into_coeffs();
    let mut n = init.n.to_spectral().into_coeffs();
    for i in 1..=steps {
        integ.step(&mut u, &mut n, &phases);
        let t = t0 + i as f64 * h;
        let finite = u.iter().chain(&n).all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::BlowUp { t });
        }
        if i % config.snapshot_stride == 0 || i == steps {
            let state = ComplexState::new(
                SpectralField::new(&grid, u.clone())?.to_physical(),
                SpectralField::new(&grid, n.clone())?.to_physical(),
                t,
            )?;
            let snap = snapshot(state, config.alpha)?;
            if norm0 > 0.0 && snap.u_l2 + snap.n_l2 > 1e6 * norm0 {
                return Err(Error::BlowUp { t });
            }
            snapshots.push(snap);
        }
    }
    Ok(Trajectory {
        config: config.clone(),
        step: h,
        snapshots,
    })
}
