use num_complex::Complex64;

use super::bilinear::{BilinearPlan, QuadratureConfig};
use super::symbol::BilinearSymbol;
use crate::error::{Error, Result};
use crate::radial::{japanese, PhysField, RadialGrid, SpectralField};
use crate::resonance::{decompose_bilinear, InteractionTag, ResonanceParams};

/// Normal-form operators for one grid: `Omega`, `Omega~` and the boundary and
/// cubic terms built from them. With `dealias`, every bilinear input and
/// output goes through the two-thirds rule, matching the time stepper.
#[derive(Clone, Debug)]
pub struct NormalForm {
    grid: RadialGrid,
    params: ResonanceParams,
    dealias: bool,
    omega: BilinearPlan,
    omega_tilde: BilinearPlan,
}

/// The cubic remainders of the normal-form transformation.
#[derive(Clone, Debug)]
pub struct CubicTerms {
    /// `Omega(|D| |U|^2, U)`.
    pub omega_wave: PhysField,
    /// `Omega(N, <D>^{-1}(N U))`.
    pub omega_kg: PhysField,
    /// `Omega~(<D>^{-1}(N U), U)`.
    pub tilde_first: PhysField,
    /// `Omega~(U, <D>^{-1}(N U))`.
    pub tilde_second: PhysField,
}

impl NormalForm {
    pub fn new(grid: &RadialGrid, params: &ResonanceParams, quad: QuadratureConfig, dealias: bool) -> Result<Self> {
        Ok(Self {
            grid: grid.clone(),
            params: params.clone(),
            dealias,
            omega: BilinearPlan::new(grid, &BilinearSymbol::omega(params), quad)?,
            omega_tilde: BilinearPlan::new(grid, &BilinearSymbol::omega_tilde(params), quad)?,
        })
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn params(&self) -> &ResonanceParams {
        &self.params
    }

    pub fn dealias(&self) -> bool {
        self.dealias
    }

    fn trunc(&self, f: &SpectralField) -> SpectralField {
        if self.dealias {
            f.dealias()
        } else {
            f.clone()
        }
    }

    /// `Omega(f, g)`.
    pub fn omega(&self, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        Ok(self.trunc(&self.omega.apply(&self.trunc(f), &self.trunc(g))?))
    }

    /// `Omega~(f, g)`; `g` enters conjugated.
    pub fn omega_tilde(&self, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        Ok(self.trunc(&self.omega_tilde.apply(&self.trunc(f), &self.trunc(g))?))
    }

    /// The product `f g` as the stepper forms it.
    pub fn product(&self, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
        let p = self.trunc(f).to_physical().pointwise_mul(&self.trunc(g).to_physical())?;
        Ok(self.trunc(&p.to_spectral()))
    }

    /// `<D>^{-1} Omega(N, U)`.
    pub fn boundary_u(&self, n: &SpectralField, u: &SpectralField) -> Result<SpectralField> {
        Ok(self.omega(n, u)?.apply_real(|xi| 1.0 / japanese(xi)))
    }

    /// `alpha |D| Omega~(U, U)`.
    pub fn boundary_n(&self, u: &SpectralField) -> Result<SpectralField> {
        let a = self.params.alpha;
        Ok(self.omega_tilde(u, u)?.apply_real(|xi| a * xi))
    }

    /// `<D>^{-1}(N U)`.
    pub fn kg_source(&self, n: &SpectralField, u: &SpectralField) -> Result<SpectralField> {
        Ok(self.product(n, u)?.apply_real(|xi| 1.0 / japanese(xi)))
    }

    /// `|D|(U conj U)`.
    pub fn wave_source(&self, u: &SpectralField) -> Result<SpectralField> {
        let uc = u.to_physical().conj().to_spectral();
        Ok(self.product(u, &uc)?.apply_real(|xi| xi))
    }

    pub fn cubic(&self, n: &SpectralField, u: &SpectralField) -> Result<[SpectralField; 4]> {
        let h = self.kg_source(n, u)?;
        Ok([
            self.omega(&self.wave_source(u)?, u)?,
            self.omega(n, &h)?,
            self.omega_tilde(&h, u)?,
            self.omega_tilde(u, &h)?,
        ])
    }

    /// `f g` minus its non-resonant high-low part, with the split done exactly
    /// as in [`decompose_bilinear`].
    pub fn resonant_remainder(&self, f: &PhysField, g: &PhysField, tags: &[InteractionTag]) -> Result<SpectralField> {
        let mut out = self.product(&f.to_spectral(), &g.to_spectral())?;
        for &t in tags {
            let part = decompose_bilinear(f, g, t, &self.params, self.dealias)?.to_spectral();
            out = out.try_sub(&part)?;
        }
        Ok(out)
    }
}

fn check_grid(a: &PhysField, b: &PhysField) -> Result<()> {
    if a.grid() != b.grid() {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// `<D>^{-1} Omega(N, U)`.
pub fn boundary_term_u(n: &PhysField, u: &PhysField, params: &ResonanceParams) -> Result<PhysField> {
    check_grid(n, u)?;
    let nf = NormalForm::new(n.grid(), params, QuadratureConfig::default(), true)?;
    Ok(nf.boundary_u(&n.to_spectral(), &u.to_spectral())?.to_physical())
}

/// `alpha |D| Omega~(U, U)`.
pub fn boundary_term_n(u: &PhysField, params: &ResonanceParams) -> Result<PhysField> {
    let nf = NormalForm::new(u.grid(), params, QuadratureConfig::default(), true)?;
    Ok(nf.boundary_n(&u.to_spectral())?.to_physical())
}

pub fn cubic_terms(n: &PhysField, u: &PhysField, params: &ResonanceParams) -> Result<CubicTerms> {
    check_grid(n, u)?;
    let nf = NormalForm::new(n.grid(), params, QuadratureConfig::default(), true)?;
    let [a, b, c, d] = nf.cubic(&n.to_spectral(), &u.to_spectral())?;
    Ok(CubicTerms {
        omega_wave: a.to_physical(),
        omega_kg: b.to_physical(),
        tilde_first: c.to_physical(),
        tilde_second: d.to_physical(),
    })
}

pub(crate) const MINUS_I: Complex64 = Complex64::new(0.0, -1.0);
