use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::io::fmt_f64;
use crate::radial::SpectralField;

/// Free profiles `V = K(-t) U(t)` and `W = W_alpha(-t) N(t)` at one checkpoint.
#[derive(Clone, Debug)]
pub struct Profile {
    pub t: f64,
    pub v: SpectralField,
    pub w: SpectralField,
}

/// `d_U = ||V(t2) - V(t1)||_{H^1}`, `d_N = ||W(t2) - W(t1)||_{L^2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CauchyRow {
    pub t1: f64,
    pub t2: f64,
    pub d_u: f64,
    pub d_n: f64,
}

#[derive(Clone, Debug)]
pub struct ScatteringReport {
    pub profiles: Vec<Profile>,
    pub cauchy: Vec<CauchyRow>,
}

impl ScatteringReport {
    /// Ratios `d(next) / d(previous)` for consecutive Cauchy rows, as `(U, N)`.
    pub fn contraction(&self) -> Vec<(f64, f64)> {
        self.cauchy.windows(2).map(|w| (w[1].d_u / w[0].d_u, w[1].d_n / w[0].d_n)).collect()
    }

    pub const CSV_HEADER: [&'static str; 4] = ["t1", "t2", "d_u", "d_n"];

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.cauchy
            .iter()
            .map(|c| {
                vec![
                    fmt_f64(c.t1),
                    fmt_f64(c.t2),
                    fmt_f64(c.d_u),
                    fmt_f64(c.d_n),
                ]
            })
            .collect()
    }
}

/// Pulls the trajectory back by the free flows at each checkpoint and tabulates
/// the Cauchy differences between consecutive checkpoints.
pub fn scattering_profile(traj: &Trajectory, checkpoints: &[f64]) -> Result<ScatteringReport> {
    let alpha = traj.config.alpha;
    let limit = traj.grid().radius() / (2.0 * alpha.max(1.0));
    let mut profiles = Vec::with_capacity(checkpoints.len());
    for &t in checkpoints {
        if t > limit {
            return Err(Error::Horizon(format!("checkpoint {t} beyond reflection-safe horizon {limit}")));
        }
        let snap = traj
            .snapshots
            .iter()
            .find(|s| (s.t() - t).abs() <= 1e-9 * t.abs().max(1.0))
            .ok_or_else(|| Error::Window(format!("no snapshot at checkpoint {t}")))?;
        profiles.push(Profile {
            t,
            v: snap.state.u.to_spectral().kg_propagate(-t),
            w: snap.state.n.to_spectral().wave_propagate(-t, alpha),
        });
    }
    let cauchy = profiles
        .windows(2)
        .map(|p| {
            Ok(CauchyRow {
                t1: p[0].t,
                t2: p[1].t,
                d_u: p[1].v.try_sub(&p[0].v)?.h1_norm(),
                d_n: p[1].w.try_sub(&p[0].w)?.l2_norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScatteringReport { profiles, cauchy })
}
