use super::omega::omega;
use super::params::{compute_params, verify_params, ParamCheck, Regime, ResonanceParams};
use crate::error::Result;
use crate::io::fmt_f64;
use crate::radial::japanese;

/// Sampling of `(|xi|, |eta|, cos)` used to check the frequency lemma.
#[derive(Clone, Debug)]
pub struct LemmaGrid {
    pub xi_min: f64,
    pub xi_max: f64,
    pub n_xi: usize,
    pub n_eta: usize,
    pub n_cos: usize,
}

impl LemmaGrid {
    pub fn for_params(p: &ResonanceParams) -> Self {
        Self {
            xi_min: p.c / 100.0,
            xi_max: 10.0 * p.c,
            n_xi: 200,
            n_eta: 50,
            n_cos: 21,
        }
    }
}

/// Extremes of one ratio over one interaction region.
#[derive(Clone, Debug)]
pub struct BoundRow {
    pub region: &'static str,
    pub index: usize,
    /// `"xi"` for `|omega| / |xi|`, `"bracket"` for `|omega| / <xi>`.
    pub denominator: &'static str,
    pub min_ratio: f64,
    pub argmin: (f64, f64, f64),
    pub max_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct SignChange {
    pub index: usize,
    /// `omega_index` at `|xi| = c - delta`, zero input frequency.
    pub left: f64,
    /// `omega_index` at `|xi| = c + delta`.
    pub right: f64,
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub params: ResonanceParams,
    pub rows: Vec<BoundRow>,
    pub sign_change: SignChange,
    pub param_check: ParamCheck,
    pub passed: bool,
}

impl LemmaReport {
    pub const CSV_HEADER: [&'static str; 9] =
        ["alpha", "region", "omega", "denominator", "min_ratio", "xi", "eta", "cos", "max_ratio"];

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            out.push(vec![
                fmt_f64(self.params.alpha),
                r.region.to_string(),
                format!("{}", r.index),
                r.denominator.to_string(),
                fmt_f64(r.min_ratio),
                fmt_f64(r.argmin.0),
                fmt_f64(r.argmin.1),
                fmt_f64(r.argmin.2),
                fmt_f64(r.max_ratio),
            ]);
        }
        out
    }
}

fn samples(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

/// Check the frequency lemma for `alpha` on `grid` (defaults derived from the
/// parameters). Uses the uncapped `k_alpha`.
pub fn verify_lemma_bounds(alpha: f64, grid: Option<LemmaGrid>) -> Result<LemmaReport> {
    let p = compute_params(alpha)?;
    let g = grid.unwrap_or_else(|| LemmaGrid::for_params(&p));
    let sep = 2f64.powi(-p.k_alpha);

    // (region, index, bracket denominator?)
    let checks: [(&'static str, usize, bool); 4] =
        [("XL", 1, false), ("XL", 3, true), ("HL", 2, true), ("HL", 4, true)];
    let mut rows = Vec::new();
    for (region, j, bracket) in checks {
        let mut min = f64::INFINITY;
        let mut max: f64 = 0.0;
        let mut argmin = (0.0, 0.0, 0.0);
        for xi in samples(g.xi_min, g.xi_max, g.n_xi) {
            if region == "XL" && p.in_annulus(xi) {
                continue;
            }
            for eta in samples(0.0, sep * xi, g.n_eta) {
                for cos in samples(-1.0, 1.0, g.n_cos) {
                    let w = omega(j, xi, eta, cos, alpha)?.abs();
                    let ratio = w / if bracket { japanese(xi) } else { xi };
                    if ratio < min {
                        min = ratio;
                        argmin = (xi, eta, cos);
                    }
                    max = max.max(ratio);
                }
            }
        }
        rows.push(BoundRow {
            region,
            index: j,
            denominator: if bracket { "bracket" } else { "xi" },
            min_ratio: min,
            argmin,
            max_ratio: max,
        });
    }

    let index = match p.regime {
        Regime::Slow => 1,
        Regime::Fast => 3,
    };
    let left = omega(index, (p.c - p.delta).max(1e-9), 0.0, 1.0, alpha)?;
    let right = omega(index, p.c + p.delta, 0.0, 1.0, alpha)?;
    let sign_change = SignChange { index, left, right };

    let param_check = verify_params(&p);
    let passed = rows.iter().all(|r| r.min_ratio > 0.0 && r.max_ratio.is_finite())
        && left * right < 0.0
        && param_check.passed;
    Ok(LemmaReport {
        params: p,
        rows,
        sign_change,
        param_check,
        passed,
    })
}
