use super::exponents::q_of_eps;
use super::spacetime::{measure_spacetime_norm, FieldSeries, Part, SpatialNorm, Window};
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};

/// Components of the resolution norm of `(U, N)` over a window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolutionNorms {
    pub eps: f64,
    /// `||P_{<0} U||_{L^inf_t L^2}`.
    pub x_energy: f64,
    /// `||P_{<0} U||_{L^2_t B'^{1/4+eps}_{q(eps)}}` (homogeneous).
    pub x_strichartz: f64,
    /// `||P_{>=0} U||_{L^inf_t H^1}`.
    pub y_energy: f64,
    /// `||P_{>=0} U||_{L^2_t B^{2/3}_{q(eps)}}`.
    pub y_strichartz: f64,
    /// `||N||_{L^inf_t L^2}`.
    pub n_energy: f64,
    /// `||N||_{L^2_t B'^{-1/4-eps}_{q(-eps)}}` (homogeneous).
    pub n_strichartz: f64,
}

impl ResolutionNorms {
    pub fn x(&self) -> f64 {
        self.x_energy + self.x_strichartz
    }

    pub fn y(&self) -> f64 {
        self.y_energy + self.y_strichartz
    }

    pub fn n(&self) -> f64 {
        self.n_energy + self.n_strichartz
    }

    pub fn total(&self) -> f64 {
        self.x() + self.y() + self.n()
    }
}

pub fn resolution_norm(traj: &Trajectory, eps: f64, window: Window) -> Result<ResolutionNorms> {
    if !(eps > 0.0 && eps < 0.3) {
        return Err(Error::InvalidConfig(format!("eps must lie in (0, 0.3), got {eps}")));
    }
    let u = FieldSeries::from_trajectory(traj, Part::U);
    let n = FieldSeries::from_trajectory(traj, Part::N);
    let low = u.map(|f| f.to_spectral().lp_project_le(-1).to_physical());
    let high = u.map(|f| {
        let s = f.to_spectral();
        s.try_sub(&s.lp_project_le(-1)).expect("same grid").to_physical()
    });
    let inf = f64::INFINITY;
    let (qp, qm) = (q_of_eps(eps), q_of_eps(-eps));
    Ok(ResolutionNorms {
        eps,
        x_energy: measure_spacetime_norm(&low, inf, SpatialNorm::Lebesgue(2.0), window)?,
        x_strichartz: measure_spacetime_norm(
            &low,
            2.0,
            SpatialNorm::Besov { s: 0.25 + eps, p: qp, homogeneous: true },
            window,
        )?,
        y_energy: measure_spacetime_norm(&high, inf, SpatialNorm::Sobolev(1.0), window)?,
        y_strichartz: measure_spacetime_norm(
            &high,
            2.0,
            SpatialNorm::Besov { s: 2.0 / 3.0, p: qp, homogeneous: false },
            window,
        )?,
        n_energy: measure_spacetime_norm(&n, inf, SpatialNorm::Lebesgue(2.0), window)?,
        n_strichartz: measure_spacetime_norm(
            &n,
            2.0,
            SpatialNorm::Besov { s: -0.25 - eps, p: qm, homogeneous: true },
            window,
        )?,
    })
}
