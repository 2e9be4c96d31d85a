//! Smooth dyadic cutoffs.

/// Even smooth cutoff: 1 on `|x| <= 1`, 0 on `|x| >= 2`.
pub fn eta0(x: f64) -> f64 {
    let x = x.abs();
    if x <= 1.0 {
        1.0
    } else if x >= 2.0 {
        0.0
    } else {
        let y = x - 1.0;
        let a = (-1.0 / y).exp();
        let b = (-1.0 / (1.0 - y)).exp();
        b / (a + b)
    }
}

/// `eta0(xi / 2^k)`, the symbol of `P_{<=k}`.
pub fn chi_le(k: i32, xi: f64) -> f64 {
    eta0(xi / 2f64.powi(k))
}

/// `eta0(xi / 2^k) - eta0(xi / 2^(k-1))`, the symbol of `P_k`.
pub fn chi(k: i32, xi: f64) -> f64 {
    chi_le(k, xi) - chi_le(k - 1, xi)
}

/// Dyadic indices `k` with `chi(k, xi) != 0` (at most two).
pub fn active_blocks(xi: f64) -> impl Iterator<Item = i32> {
    let xi = xi.abs();
    let k0 = if xi > 0.0 { Some(xi.log2().floor() as i32) } else { None };
    k0.into_iter()
        .flat_map(|k| [k, k + 1])
        .filter(move |&k| chi(k, xi) != 0.0)
}
