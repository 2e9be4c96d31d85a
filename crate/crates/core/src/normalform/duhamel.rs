use super::bilinear::QuadratureConfig;
use super::terms::{NormalForm, MINUS_I};
use crate::dynamics::{Model, Trajectory};
use crate::error::{Error, Result};
use crate::radial::{japanese, SpectralField};
use crate::resonance::{InteractionTag, ResonanceParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    U,
    N,
}

#[derive(Clone, Copy, Debug)]
pub struct DuhamelResiduals {
    pub u: f64,
    pub n: f64,
}

/// Composite Simpson weights on `n + 1` equally spaced samples, finishing with
/// the 3/8 rule when `n` is odd; trapezoid for a single interval.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n + 1];
    match n {
        0 => {}
        1 => {
            w[0] = 0.5 * h;
            w[1] = 0.5 * h;
        }
        _ => {
            let simpson_end = if n.is_multiple_of(2) { n } else { n - 3 };
            for i in (0..simpson_end).step_by(2) {
                w[i] += h / 3.0;
                w[i + 1] += 4.0 * h / 3.0;
                w[i + 2] += h / 3.0;
            }
            if n % 2 == 1 {
                let s = simpson_end;
                w[s] += 3.0 * h / 8.0;
                w[s + 1] += 9.0 * h / 8.0;
                w[s + 2] += 9.0 * h / 8.0;
                w[s + 3] += 3.0 * h / 8.0;
            }
        }
    }
    w
}

fn uniform_spacing(times: &[f64]) -> Result<f64> {
    if times.len() < 2 {
        return Ok(0.0);
    }
    let h = times[1] - times[0];
    for w in times.windows(2) {
        if ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0) {
            return Err(Error::Window("snapshots must be equally spaced".into()));
        }
    }
    Ok(h)
}

fn relative(diff: &SpectralField, reference: &SpectralField) -> f64 {
    let d = diff.l2_norm();
    let r = reference.l2_norm();
    if r == 0.0 {
        d
    } else {
        d / r
    }
}

/// Relative `L^2` residual of the normal-form integral equations at the last
/// snapshot, for both components. Time integrals use the snapshots.
pub fn duhamel_residuals(
    traj: &Trajectory,
    params: &ResonanceParams,
    quad: QuadratureConfig,
) -> Result<DuhamelResiduals> {
    let cfg = &traj.config;
    let alpha = cfg.alpha;
    let snaps = &traj.snapshots;
    let times = traj.times();
    let h = uniform_spacing(&times)?;
    let t0 = times[0];
    let t = *times.last().expect("non-empty");
    let us: Vec<SpectralField> = snaps.iter().map(|s| s.state.u.to_spectral()).collect();
    let ns: Vec<SpectralField> = snaps.iter().map(|s| s.state.n.to_spectral()).collect();
    let (u0, n0) = (&us[0], &ns[0]);
    let (ut, nt) = (us.last().unwrap(), ns.last().unwrap());
    let free_u = u0.kg_propagate(t - t0);
    let free_n = n0.wave_propagate(t - t0, alpha);

    if cfg.linear {
        return Ok(DuhamelResiduals {
            u: relative(&free_u.try_sub(ut)?, ut),
            n: relative(&free_n.try_sub(nt)?, nt),
        });
    }
    if cfg.model != Model::Simplified {
        return Err(Error::Model(
            "the integral equations hold for the simplified model only".into(),
        ));
    }
    if snaps.len() < 3 {
        return Err(Error::Window("need at least three snapshots".into()));
    }

    let grid = ut.grid().clone();
    let nf = NormalForm::new(&grid, params, quad, cfg.dealias)?;
    let weights = simpson_weights(snaps.len() - 1, h);
    let mut int_u = SpectralField::zeros(&grid);
    let mut int_n = SpectralField::zeros(&grid);
    for (i, snap) in snaps.iter().enumerate() {
        let (u, n) = (&us[i], &ns[i]);
        let [wave, kg, tilde_first, tilde_second] = nf.cubic(n, u)?;
        let up = &snap.state.u;
        let np = &snap.state.n;
        let rem_u = nf.resonant_remainder(np, up, &[InteractionTag::XL])?;
        let rem_n = nf.resonant_remainder(up, &up.conj(), &[InteractionTag::XL, InteractionTag::LX])?;

        // U: -i <D>^{-1} [alpha Omega(D|U|^2, U) + Omega(N, h) + (N U)_rest]
        let gu = (&(&wave * alpha) + &(&kg + &rem_u))
            .apply_real(|xi| 1.0 / japanese(xi))
            .scale(MINUS_I);
        // N: -i alpha D [(U conj U)_rest + Omega~(h, U) - Omega~(U, h)]
        let gn = (&rem_n + &(&tilde_first - &tilde_second))
            .apply_real(|xi| alpha * xi)
            .scale(MINUS_I);
        let lag = t - times[i];
        int_u = &int_u + &(&gu.kg_propagate(lag) * weights[i]);
        int_n = &int_n + &(&gn.wave_propagate(lag, alpha) * weights[i]);
    }

    let bu0 = nf.boundary_u(n0, u0)?;
    let but = nf.boundary_u(nt, ut)?;
    let rhs_u = &(&(&free_u + &bu0.kg_propagate(t - t0)) - &but) + &int_u;

    let bn0 = nf.boundary_n(u0)?;
    let bnt = nf.boundary_n(ut)?;
    let rhs_n = &(&(&free_n + &bn0.wave_propagate(t - t0, alpha)) - &bnt) + &int_n;

    Ok(DuhamelResiduals {
        u: relative(&rhs_u.try_sub(ut)?, ut),
        n: relative(&rhs_n.try_sub(nt)?, nt),
    })
}

pub fn duhamel_residual(traj: &Trajectory, params: &ResonanceParams, which: Component) -> Result<f64> {
    let r = duhamel_residuals(traj, params, QuadratureConfig::default())?;
    Ok(match which {
        Component::U => r.u,
        Component::N => r.n,
    })
}

