use crate::error::{Error, Result};
use crate::radial::japanese;

/// `|xi - eta|` from the magnitudes and the angle cosine.
pub fn difference_norm(xi: f64, eta: f64, cos: f64) -> f64 {
    (xi * xi + eta * eta - 2.0 * xi * eta * cos).max(0.0).sqrt()
}

fn signs(j: usize) -> Result<(f64, f64)> {
    match j {
        1 => Ok((1.0, 1.0)),
        2 => Ok((-1.0, 1.0)),
        3 => Ok((1.0, -1.0)),
        4 => Ok((-1.0, -1.0)),
        _ => Err(Error::InvalidConfig(format!("resonance index must be 1..=4, got {j}"))),
    }
}

/// Phase of the `U`-equation interactions with output `xi`, `N` at
/// `xi - eta` and `U` at `eta`:
/// `-<xi> ± alpha |xi - eta| ± <eta>` in the order `(+,+), (-,+), (+,-), (-,-)`.
pub fn omega(j: usize, xi: f64, eta: f64, cos: f64, alpha: f64) -> Result<f64> {
    let (a, b) = signs(j)?;
    Ok(-japanese(xi) + a * alpha * difference_norm(xi, eta, cos) + b * japanese(eta))
}

/// Phase of the `N`-equation interactions with output `xi` and `U` factors
/// at `xi - eta` and `eta`:
/// `-alpha |xi| ± <xi - eta> ∓' <eta>` with sign pairs `(+,-), (-,+), (+,+), (-,-)`.
pub fn omega_tilde(j: usize, xi: f64, eta: f64, cos: f64, alpha: f64) -> Result<f64> {
    let (a, b) = match j {
        1 => (1.0, -1.0),
        2 => (-1.0, 1.0),
        3 => (1.0, 1.0),
        4 => (-1.0, -1.0),
        _ => return Err(Error::InvalidConfig(format!("resonance index must be 1..=4, got {j}"))),
    };
    Ok(-alpha * xi + a * japanese(difference_norm(xi, eta, cos)) + b * japanese(eta))
}

/// Image of `(|xi|, |eta|, cos)` under `xi -> eta - xi`, as magnitudes and cosine.
pub fn dual_point(xi: f64, eta: f64, cos: f64) -> (f64, f64, f64) {
    let d = difference_norm(xi, eta, cos);
    if d == 0.0 || eta == 0.0 {
        return (d, eta, 1.0);
    }
    let c = ((eta * eta - xi * eta * cos) / (eta * d)).clamp(-1.0, 1.0);
    (d, eta, c)
}
