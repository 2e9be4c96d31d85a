use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const TOL: f64 = 1e-12;

/// Dispersion relation the estimate is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Klein-Gordon propagator `e^{it<D>}`, whose high-frequency admissible
    /// range is the Schrodinger one.
    Schrodinger,
    /// Wave propagator `e^{it alpha |D|}`.
    Wave,
}

impl Flavor {
    fn name(self) -> &'static str {
        match self {
            Flavor::Schrodinger => "schrodinger",
            Flavor::Wave => "wave",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schrodinger" | "kg" => Ok(Flavor::Schrodinger),
            "wave" => Ok(Flavor::Wave),
            other => Err(Error::InvalidConfig(format!("unknown flavor `{other}`"))),
        }
    }
}

/// `q(eps)` with `1/q(eps) = 1/4 + eps/3`; negative `eps` gives `q(-|eps|)`.
pub fn q_of_eps(eps: f64) -> f64 {
    1.0 / (0.25 + eps / 3.0)
}

fn inv(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        1.0 / x
    }
}

fn is_energy_pair(q: f64, r: f64) -> bool {
    q.is_infinite() && (r - 2.0).abs() < TOL
}

/// A Strichartz pair together with its derivative loss `beta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmissiblePair {
    pub q: f64,
    pub r: f64,
    pub flavor: Flavor,
    /// Loss such that the free flow of `P_k phi` is bounded by `2^{beta k}`.
    pub beta: f64,
    /// `1/q + 2/r = 1`, where `beta` is `(1/2 - 1/r)+`: the bound holds
    /// only with an arbitrarily small extra power.
    pub eps_augmented: bool,
}

impl AdmissiblePair {
    pub fn new(q: f64, r: f64, flavor: Flavor) -> Result<Self> {
        check_admissible(q, r, flavor)?;
        let (iq, ir) = (inv(q), inv(r));
        let borderline = (iq + 2.0 * ir - 1.0).abs() < TOL && !is_energy_pair(q, r);
        let beta = match flavor {
            Flavor::Wave => 1.5 - 3.0 * ir - iq,
            Flavor::Schrodinger if borderline => 0.5 - ir,
            Flavor::Schrodinger if iq + 2.0 * ir < 1.0 || is_energy_pair(q, r) => 1.5 - 3.0 * ir - iq,
            Flavor::Schrodinger => ir + iq - 0.5,
        };
        Ok(Self { q, r, flavor, beta, eps_augmented: borderline && flavor == Flavor::Schrodinger })
    }

    /// Besov regularity index of the high-frequency estimate, `-beta`.
    pub fn besov_exponent(&self) -> f64 {
        -self.beta
    }

    /// Regularity index `2/q + 3/r - 3/2` of the `P_{<0}` Klein-Gordon estimate.
    pub fn low_frequency_exponent(&self) -> f64 {
        2.0 * inv(self.q) + 3.0 * inv(self.r) - 1.5
    }

    /// Lower-bound constant of the optimality witness: `<k>^{1/q} 2^{(1/2-1/r)k}`
    /// on the borderline, `2^{beta k}` elsewhere.
    pub fn witness_constant(&self, k: i32) -> f64 {
        let k = f64::from(k);
        if self.eps_augmented {
            (1.0 + k * k).sqrt().powf(inv(self.q)) * 2f64.powf((0.5 - inv(self.r)) * k)
        } else {
            2f64.powf(self.beta * k)
        }
    }
}

/// Rejects pairs outside the radial admissible range, naming the violated condition.
pub fn check_admissible(q: f64, r: f64, flavor: Flavor) -> Result<()> {
    let reject = |violated: String| {
        Err(Error::NotAdmissible { q, r, flavor: flavor.name(), violated })
    };
    if q.is_nan() || r.is_nan() || q < 2.0 || r < 2.0 {
        return reject("q, r in [2, inf]".into());
    }
    if is_energy_pair(q, r) {
        return Ok(());
    }
    let (iq, ir) = (inv(q), inv(r));
    match flavor {
        Flavor::Schrodinger if 2.0 * iq + 5.0 * ir >= 2.5 - TOL => {
            reject(format!("2/q + 5/r < 5/2 (got {})", 2.0 * iq + 5.0 * ir))
        }
        Flavor::Wave if iq + 2.0 * ir >= 1.0 - TOL => reject(format!("1/q + 2/r < 1 (got {})", iq + 2.0 * ir)),
        _ => Ok(()),
    }
}

/// `beta(q, r)` for the given flavor.
pub fn beta_exponent(q: f64, r: f64, flavor: Flavor) -> Result<f64> {
    Ok(AdmissiblePair::new(q, r, flavor)?.beta)
}
