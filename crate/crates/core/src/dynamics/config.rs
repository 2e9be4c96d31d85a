use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Which nonlinearity drives the first-order system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `(Re N)(Re U)` and `(Re U)^2`: equivalent to the real second-order system.
    Full,
    /// `N U` and `U conj(U)`, the form used by the normal-form analysis.
    Simplified,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Full => "full",
            Model::Simplified => "simplified",
        })
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Model::Full),
            "simplified" => Ok(Model::Simplified),
            other => Err(Error::InvalidConfig(format!("unknown model '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub alpha: f64,
    pub radius: f64,
    pub modes: usize,
    pub dt: f64,
    pub horizon: f64,
    pub model: Model,
    pub dealias: bool,
    pub snapshot_stride: usize,
    /// Drop the nonlinearity entirely; used to check the linear flow.
    pub linear: bool,
}

impl SimConfig {
    pub fn new(alpha: f64, radius: f64, modes: usize) -> Self {
        Self {
            alpha,
            radius,
            modes,
            dt: 1e-2,
            horizon: 1.0,
            model: Model::Full,
            dealias: true,
            snapshot_stride: 1,
            linear: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        if (self.alpha - 1.0).abs() <= 1e-6 {
            return bad(format!("alpha = {} is too close to 1", self.alpha));
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.horizon.is_finite() && self.horizon >= 0.0) {
            return bad(format!("horizon must be non-negative, got {}", self.horizon));
        }
        if self.snapshot_stride == 0 {
            return bad("snapshot stride must be at least 1".into());
        }
        if !(self.radius.is_finite() && self.radius > 0.0) || self.modes < 2 {
            return bad(format!("bad grid R = {}, M = {}", self.radius, self.modes));
        }
        Ok(())
    }

    /// Ordered key/value pairs describing the run.
    pub fn manifest(&self) -> Vec<(String, String)> {
        vec![
            ("grid.R".into(), format!("{}", self.radius)),
            ("grid.M".into(), format!("{}", self.modes)),
            ("sim.alpha".into(), format!("{}", self.alpha)),
            ("sim.dt".into(), format!("{}", self.dt)),
            ("sim.T".into(), format!("{}", self.horizon)),
            ("sim.model".into(), self.model.to_string()),
            ("sim.dealias".into(), format!("{}", self.dealias)),
            ("sim.stride".into(), format!("{}", self.snapshot_stride)),
            ("sim.linear".into(), format!("{}", self.linear)),
        ]
    }
}
