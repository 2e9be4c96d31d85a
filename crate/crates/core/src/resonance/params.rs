use crate::error::{Error, Result};
use crate::radial::{japanese, RadialGrid};

/// Annulus half-width parameter: the lemma is applied with `delta = theta * c`.
pub const THETA: f64 = 0.25;
const RHO_MARGIN: f64 = 0.9;
const SWEEP_POINTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// `alpha < 1`: `omega_1` is resonant at `|xi| = c`.
    Slow,
    /// `alpha > 1`: `omega_3` is resonant at `|xi| = c`.
    Fast,
}

/// Constants of the frequency lemma for a given `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceParams {
    pub alpha: f64,
    pub regime: Regime,
    /// Resonant radius `2 alpha / |1 - alpha^2|`.
    pub c: f64,
    /// Half-width of the resonant annulus.
    pub delta: f64,
    /// Lower bound constant off the annulus.
    pub rho: f64,
    /// Dyadic separation for the high-low interactions.
    pub k_alpha: i32,
}

/// `f(r) = alpha r - <r> + 1` for `alpha < 1`, `alpha r - <r> - 1` otherwise:
/// the resonance function at zero input frequency.
pub fn resonance_profile(alpha: f64, r: f64) -> f64 {
    if alpha < 1.0 {
        alpha * r - japanese(r) + 1.0
    } else {
        alpha * r - japanese(r) - 1.0
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let fa = f(a);
    while b - a > 1e-10 {
        let mid = 0.5 * (a + b);
        if (f(mid) > 0.0) == (fa > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn ceil_log(x: f64) -> i32 {
    (x.log2().abs() + 5.0).ceil() as i32
}

pub fn compute_params(alpha: f64) -> Result<ResonanceParams> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidConfig(format!("alpha must be positive, got {alpha}")));
    }
    if (alpha - 1.0).abs() <= 1e-6 {
        return Err(Error::InvalidConfig(format!("alpha = {alpha} is too close to 1")));
    }
    let c = 2.0 * alpha / (1.0 - alpha * alpha).abs();
    if alpha < 1.0 {
        let delta = THETA * c;
        let mut min_ratio = f64::INFINITY;
        for i in 1..=SWEEP_POINTS {
            let r = 10.0 * c * i as f64 / SWEEP_POINTS as f64;
            if (r - c).abs() >= delta {
                min_ratio = min_ratio.min(resonance_profile(alpha, r).abs() / r);
            }
        }
        let rho = RHO_MARGIN * min_ratio;
        let k_alpha = 5.max(ceil_log(rho)).max(ceil_log(1.0 - alpha));
        Ok(ResonanceParams {
            alpha,
            regime: Regime::Slow,
            c,
            delta,
            rho,
            k_alpha,
        })
    } else {
        let (r1, r2) = fast_crossings(alpha, c);
        let delta = (c - r1).max(r2 - c);
        Ok(ResonanceParams {
            alpha,
            regime: Regime::Fast,
            c,
            delta,
            rho: 0.5 * (alpha - 1.0),
            k_alpha: 5.max(ceil_log(alpha - 1.0)),
        })
    }
}

/// Where `|g(r)| = (alpha - 1) r / 2` on either side of `c`, `alpha > 1`.
pub fn fast_crossings(alpha: f64, c: f64) -> (f64, f64) {
    let h = |r: f64| resonance_profile(alpha, r).abs() - 0.5 * (alpha - 1.0) * r;
    // h < 0 at c, h > 0 near 0 and for large r.
    let lo = bisect(h, 1e-12, c);
    let mut hi = 2.0 * c;
    while h(hi) <= 0.0 {
        hi *= 2.0;
    }
    let hi = bisect(h, c, hi);
    (lo, hi)
}

impl ResonanceParams {
    pub fn with_k_alpha(mut self, k: i32) -> Self {
        self.k_alpha = k;
        self
    }

    /// Clamp `k_alpha` so a high-low pair fits inside the grid's dyadic range.
    /// Returns a warning when the clamp changes anything.
    pub fn capped_for_grid(&self, grid: &RadialGrid) -> (Self, Option<String>) {
        let range = grid.dyadic_range();
        let cap = range.end() - range.start() - 2;
        if self.k_alpha <= cap {
            return (self.clone(), None);
        }
        let warning = format!(
            "k_alpha = {} exceeds what the grid resolves; using {} (R = {}, M = {})",
            self.k_alpha,
            cap,
            grid.radius(),
            grid.modes()
        );
        (self.clone().with_k_alpha(cap.max(1)), Some(warning))
    }

    /// Maximizer `alpha / sqrt(1 - alpha^2)` of the resonance profile; slow regime only.
    pub fn r0(&self) -> Option<f64> {
        match self.regime {
            Regime::Slow => Some(self.alpha / (1.0 - self.alpha * self.alpha).sqrt()),
            Regime::Fast => None,
        }
    }

    pub fn in_annulus(&self, xi: f64) -> bool {
        (xi - self.c).abs() <= self.delta
    }
}

/// Outcome of re-deriving the parameters on an independent dense sweep.
#[derive(Clone, Debug)]
pub struct ParamCheck {
    pub c_residual: f64,
    pub delta_in_range: bool,
    /// Smallest `|f(r)| / (rho r)` off the annulus; at least 1 when valid.
    pub lower_bound_margin: f64,
    pub k_alpha_ok: bool,
    pub passed: bool,
}

pub fn verify_params(p: &ResonanceParams) -> ParamCheck {
    let c_residual = resonance_profile(p.alpha, p.c).abs();
    let delta_in_range = p.delta > 0.0 && p.delta < p.c;
    let n = 20_011;
    let mut margin = f64::INFINITY;
    for i in 1..=n {
        let r = 20.0 * p.c * i as f64 / n as f64;
        if !p.in_annulus(r) {
            margin = margin.min(resonance_profile(p.alpha, r).abs() / (p.rho * r));
        }
    }
    let k_alpha_ok = p.k_alpha >= 5
        && 2f64.powi(-p.k_alpha) <= p.rho / 16.0
        && 2f64.powi(-p.k_alpha) <= (1.0 - p.alpha).abs() / 16.0;
    let passed = c_residual < 1e-12 && delta_in_range && margin >= 1.0 && k_alpha_ok && p.rho > 0.0;
    ParamCheck {
        c_residual,
        delta_in_range,
        lower_bound_margin: margin,
        k_alpha_ok,
        passed,
    }
}
