use crate::error::{Error, Result};
use crate::radial::{active_blocks, chi, chi_le, japanese};
use crate::resonance::{difference_norm, resonance_cutoff, ResonanceParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    /// `XL(xi - eta, eta) / omega_1`: the `U`-equation normal form.
    Omega,
    /// `(XL + LX)(xi - eta, eta) / omega~_1` with the second factor conjugated.
    OmegaTilde,
    /// Symbol 1: the plain product.
    Plain,
}

/// Bilinear Fourier multiplier `m(xi, eta)` acting as
/// `B(f, g)^(xi) = (2 pi)^{-3} int m(xi, eta) f^(xi - eta) g^(eta) d eta`.
#[derive(Clone, Debug)]
pub struct BilinearSymbol {
    pub kind: SymbolKind,
    pub params: ResonanceParams,
}

/// Relative size below which a phase counts as resonant.
const SINGULAR_TOL: f64 = 1e-8;

/// High-low cutoff away from the annulus: `(1 - A(zeta)) sum_k chi_k(zeta) eta0(eta / 2^{k - k_alpha})`.
pub fn xl_cutoff(zeta: f64, eta: f64, p: &ResonanceParams) -> f64 {
    let hl: f64 = active_blocks(zeta)
        .map(|k| chi(k, zeta) * chi_le(k - p.k_alpha, eta))
        .sum();
    if hl == 0.0 {
        return 0.0;
    }
    hl * (1.0 - resonance_cutoff(zeta, p))
}

impl BilinearSymbol {
    pub fn omega(params: &ResonanceParams) -> Self {
        Self {
            kind: SymbolKind::Omega,
            params: params.clone(),
        }
    }

    pub fn omega_tilde(params: &ResonanceParams) -> Self {
        Self {
            kind: SymbolKind::OmegaTilde,
            params: params.clone(),
        }
    }

    pub fn plain(params: &ResonanceParams) -> Self {
        Self {
            kind: SymbolKind::Plain,
            params: params.clone(),
        }
    }

    /// Whether the second argument enters through `conj(g)^`.
    pub fn conjugates_second(&self) -> bool {
        self.kind == SymbolKind::OmegaTilde
    }

    /// The cutoff part of the symbol.
    pub fn cutoff(&self, eta: f64, zeta: f64) -> f64 {
        let p = &self.params;
        match self.kind {
            SymbolKind::Plain => 1.0,
            SymbolKind::Omega => xl_cutoff(zeta, eta, p),
            SymbolKind::OmegaTilde => xl_cutoff(zeta, eta, p) + xl_cutoff(eta, zeta, p),
        }
    }

    /// The phase dividing the cutoff; 1 for the plain symbol.
    pub fn denominator(&self, xi: f64, eta: f64, zeta: f64) -> f64 {
        let a = self.params.alpha;
        match self.kind {
            SymbolKind::Plain => 1.0,
            SymbolKind::Omega => -japanese(xi) + a * zeta + japanese(eta),
            SymbolKind::OmegaTilde => japanese(zeta) - japanese(eta) - a * xi,
        }
    }

    /// Symbol value for output `|xi|`, first factor at `zeta = |xi - eta|`
    /// and second factor at `|eta|`. Fails where the cutoff is on and the
    /// phase is (numerically) resonant.
    pub fn eval(&self, xi: f64, eta: f64, zeta: f64) -> Result<f64> {
        let cut = self.cutoff(eta, zeta);
        if cut == 0.0 {
            return Ok(0.0);
        }
        let d = self.denominator(xi, eta, zeta);
        if d.abs() < SINGULAR_TOL * japanese(xi) {
            return Err(Error::SingularSymbol { xi, eta, zeta });
        }
        Ok(cut / d)
    }

    /// As [`BilinearSymbol::eval`] with the angle cosine instead of `zeta`.
    pub fn eval_at(&self, xi: f64, eta: f64, cos: f64) -> Result<f64> {
        self.eval(xi, eta, difference_norm(xi, eta, cos))
    }

    /// Sub-intervals of `[|xi - eta|, xi + eta]` outside which the symbol
    /// vanishes identically for fixed `(xi, eta)`.
    pub fn zeta_intervals(&self, xi: f64, eta: f64) -> Vec<(f64, f64)> {
        let lo = (xi - eta).abs();
        let hi = xi + eta;
        let sep = 2f64.powi(self.params.k_alpha - 2);
        // High-low needs zeta > eta 2^{k_alpha - 2}; low-high needs zeta < eta 2^{2 - k_alpha}.
        let high = (lo.max(eta * sep), hi);
        let low = (lo, hi.min(eta / sep));
        let raw = match self.kind {
            SymbolKind::Plain => vec![(lo, hi)],
            SymbolKind::Omega => vec![high],
            SymbolKind::OmegaTilde => vec![low, high],
        };
        raw.into_iter().filter(|(a, b)| b > a).collect()
    }
}
