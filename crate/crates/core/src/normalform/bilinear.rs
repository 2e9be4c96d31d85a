use std::f64::consts::PI;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;

use super::symbol::BilinearSymbol;
use crate::error::{Error, Result};
use crate::radial::{interp_index, PhysField, RadialGrid, SpectralField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureConfig {
    /// Gauss-Legendre nodes per `zeta` sub-interval.
    pub nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { nodes: 64 }
    }
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    eta: u32,
    lo: u32,
    frac: f64,
    coef: f64,
}

/// Precomputed quadrature for one symbol on one grid.
///
/// For radial inputs, with `zeta = |xi - eta|`,
/// `B(f, g)^(xi) = (4 pi^2 xi)^{-1} int_0^inf eta g^(eta) int_{|xi-eta|}^{xi+eta} m f^(zeta) zeta d zeta d eta`.
/// The `eta` integral is the trapezoid rule on the spectral nodes, the inner
/// one Gauss-Legendre on the sub-intervals where `m` can be nonzero, with
/// `f^` linearly interpolated between nodes.
#[derive(Clone, Debug)]
pub struct BilinearPlan {
    grid: RadialGrid,
    conj_second: bool,
    rows: Vec<Vec<Entry>>,
}

impl BilinearPlan {
    pub fn new(grid: &RadialGrid, symbol: &BilinearSymbol, quad: QuadratureConfig) -> Result<Self> {
        let rule = GaussLegendre::new(quad.nodes)
            .map_err(|e| Error::InvalidConfig(format!("quadrature with {} nodes: {e}", quad.nodes)))?
            .into_node_weight_pairs();
        let m = grid.modes();
        let dxi = grid.dxi();
        let rows: Result<Vec<Vec<Entry>>> = (0..m)
            .into_par_iter()
            .map(|mi| {
                let xi = grid.xi(mi);
                let scale = dxi / (4.0 * PI * PI * xi);
                let mut row = Vec::new();
                for ei in 0..m {
                    let eta = grid.xi(ei);
                    for (a, b) in symbol.zeta_intervals(xi, eta) {
                        let half = 0.5 * (b - a);
                        let mid = 0.5 * (a + b);
                        for &(x, w) in &rule {
                            let zeta = mid + half * x;
                            let s = symbol.eval(xi, eta, zeta)?;
                            if s == 0.0 {
                                continue;
                            }
                            let (lo, frac) = interp_index(grid, zeta);
                            if lo >= m {
                                continue;
                            }
                            row.push(Entry {
                                eta: ei as u32,
                                lo: lo as u32,
                                frac,
                                coef: scale * eta * zeta * half * w * s,
                            });
                        }
                    }
                }
                Ok(row)
            })
            .collect();
        Ok(Self {
            grid: grid.clone(),
            conj_second: symbol.conjugates_second(),
            rows: rows?,
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Number of stored quadrature entries.
    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn apply(&self, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        if f.grid() != &self.grid || g.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let mut fe = f.coeffs().to_vec();
        fe.push(Complex64::new(0.0, 0.0));
        let gc: Vec<Complex64> = if self.conj_second {
            g.coeffs().iter().map(|z| z.conj()).collect()
        } else {
            g.coeffs().to_vec()
        };
        let out: Vec<Complex64> = self
            .rows
            .par_iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        let lo = e.lo as usize;
                        let fv = fe[lo] * (1.0 - e.frac) + fe[lo + 1] * e.frac;
                        fv * gc[e.eta as usize] * e.coef
                    })
                    .sum()
            })
            .collect();
        SpectralField::new(&self.grid, out)
    }
}

/// One-shot application of a bilinear symbol to physical fields.
pub fn bilinear_apply(
    symbol: &BilinearSymbol,
    f: &PhysField,
    g: &PhysField,
    quad: QuadratureConfig,
) -> Result<PhysField> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let plan = BilinearPlan::new(f.grid(), symbol, quad)?;
    Ok(plan.apply(&f.to_spectral(), &g.to_spectral())?.to_physical())
}
