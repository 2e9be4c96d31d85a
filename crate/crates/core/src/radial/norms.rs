use std::f64::consts::PI;

use super::field::PhysField;
use crate::error::{Error, Result};

/// `L^p(R^3)` norm of a radial field; `p = f64::INFINITY` gives the sup norm.
pub fn lebesgue_norm(f: &PhysField, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    if p.is_infinite() {
        return Ok(f.sup_norm());
    }
    if p == 2.0 {
        return Ok(f.l2_norm());
    }
    let grid = f.grid();
    let s: f64 = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, z)| z.norm().powf(p) * grid.r(j).powi(2))
        .sum();
    Ok((4.0 * PI * grid.dr() * s).powf(1.0 / p))
}

/// Besov norm `(sum_k (w_k ||P_k f||_p)^2)^{1/2}` over the dyadic blocks the
/// grid resolves, with `w_k = 2^{sk}` (homogeneous) or `<2^k>^s`.
pub fn besov_norm(f: &PhysField, s: f64, p: f64, homogeneous: bool) -> Result<f64> {
    let blocks = besov_blocks(f, s, p, homogeneous)?;
    Ok(blocks.iter().map(|(_, b)| b * b).sum::<f64>().sqrt())
}

/// Weighted block norms `(k, w_k ||P_k f||_p)`.
pub fn besov_blocks(f: &PhysField, s: f64, p: f64, homogeneous: bool) -> Result<Vec<(i32, f64)>> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let spec = f.to_spectral();
    f.grid()
        .dyadic_range()
        .map(|k| {
            let two_k = 2f64.powi(k);
            let w = if homogeneous {
                two_k.powf(s)
            } else {
                (1.0 + two_k * two_k).sqrt().powf(s)
            };
            let piece = spec.lp_project(k).to_physical();
            Ok((k, w * lebesgue_norm(&piece, p)?))
        })
        .collect()
}
