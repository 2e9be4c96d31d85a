use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::params::ResonanceParams;
use crate::error::{Error, Result};
use crate::radial::{eta0, PhysField, SpectralField};

/// Frequency regime of a bilinear interaction `P_{k1} f * P_{k2} g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InteractionTag {
    /// `k1 <= k2 - k_alpha`.
    LH,
    /// `k2 <= k1 - k_alpha`.
    HL,
    /// `|k1 - k2| < k_alpha`.
    HH,
    /// High-low with the high factor in the resonant annulus.
    AlphaL,
    /// High-low with the high factor away from the annulus.
    XL,
    /// Low-high with the high (second) factor in the resonant annulus.
    LAlpha,
    /// Low-high with the high (second) factor away from the annulus.
    LX,
}

impl InteractionTag {
    pub const ALL: [InteractionTag; 7] = [
        InteractionTag::LH,
        InteractionTag::HL,
        InteractionTag::HH,
        InteractionTag::AlphaL,
        InteractionTag::XL,
        InteractionTag::LAlpha,
        InteractionTag::LX,
    ];
}

impl fmt::Display for InteractionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InteractionTag::LH => "LH",
            InteractionTag::HL => "HL",
            InteractionTag::HH => "HH",
            InteractionTag::AlphaL => "aL",
            InteractionTag::XL => "XL",
            InteractionTag::LAlpha => "La",
            InteractionTag::LX => "LX",
        })
    }
}

impl FromStr for InteractionTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InteractionTag::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown interaction tag '{s}'")))
    }
}

fn annulus_block(k: i32, p: &ResonanceParams) -> bool {
    (2f64.powi(k) - p.c).abs() <= p.delta
}

/// Whether the dyadic pair `(k1, k2)` belongs to `tag` by the block rule.
pub fn in_support(tag: InteractionTag, k1: i32, k2: i32, p: &ResonanceParams) -> bool {
    let ka = p.k_alpha;
    let hl = k2 <= k1 - ka;
    let lh = k1 <= k2 - ka;
    match tag {
        InteractionTag::LH => lh,
        InteractionTag::HL => hl,
        InteractionTag::HH => (k1 - k2).abs() < ka,
        InteractionTag::AlphaL => hl && annulus_block(k1, p),
        InteractionTag::XL => hl && !annulus_block(k1, p),
        InteractionTag::LAlpha => lh && annulus_block(k2, p),
        InteractionTag::LX => lh && !annulus_block(k2, p),
    }
}

/// Smooth indicator of the resonant annulus `||xi| - c| <= delta`, vanishing
/// for `||xi| - c| >= 2 delta`. Used to split high-low products into their
/// resonant and non-resonant parts.
pub fn resonance_cutoff(xi: f64, p: &ResonanceParams) -> f64 {
    eta0((xi.abs() - p.c) / p.delta)
}

/// Which factor gets the annulus cutoff and with what weight.
#[derive(Clone, Copy)]
enum Split {
    None,
    First(bool),
    Second(bool),
}

/// The part of the product `f g` carried by the interaction `tag`.
///
/// Pairs are selected by the block rule on `(k1, k2)`; the resonant and
/// non-resonant high-low parts are then separated by [`resonance_cutoff`] on
/// the high factor, so `aL + XL = HL` and `La + LX = LH` hold exactly.
/// With `dealias`, inputs and output go through the two-thirds rule as in the
/// time stepper, so the pieces add up to the stepper's product.
pub fn decompose_bilinear(
    f: &PhysField,
    g: &PhysField,
    tag: InteractionTag,
    p: &ResonanceParams,
    dealias: bool,
) -> Result<PhysField> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch);
    }
    let grid = f.grid().clone();
    let prep = |x: &PhysField| -> SpectralField {
        let s = x.to_spectral();
        if dealias {
            s.dealias()
        } else {
            s
        }
    };
    let (fs, gs) = (prep(f), prep(g));
    let ka = p.k_alpha;
    let (pair_tag, split) = match tag {
        InteractionTag::AlphaL => (InteractionTag::HL, Split::First(true)),
        InteractionTag::XL => (InteractionTag::HL, Split::First(false)),
        InteractionTag::LAlpha => (InteractionTag::LH, Split::Second(true)),
        InteractionTag::LX => (InteractionTag::LH, Split::Second(false)),
        t => (t, Split::None),
    };
    let weight = |resonant: bool| {
        move |xi: f64| {
            let a = resonance_cutoff(xi, p);
            if resonant {
                a
            } else {
                1.0 - a
            }
        }
    };
    let fs = match split {
        Split::First(res) => fs.apply_real(weight(res)),
        _ => fs,
    };
    let gs = match split {
        Split::Second(res) => gs.apply_real(weight(res)),
        _ => gs,
    };
    let range: Vec<i32> = grid.dyadic_range().collect();
    let fb: Vec<Vec<Complex64>> = range.iter().map(|&k| fs.lp_project(k).to_physical().into_values()).collect();
    let gb: Vec<Vec<Complex64>> = range.iter().map(|&k| gs.lp_project(k).to_physical().into_values()).collect();

    let mut acc = vec![Complex64::new(0.0, 0.0); grid.modes()];
    for (i1, &k1) in range.iter().enumerate() {
        // Sum the admissible second factors first, then multiply once.
        let mut second = vec![Complex64::new(0.0, 0.0); grid.modes()];
        let mut any = false;
        for (i2, &k2) in range.iter().enumerate() {
            let hit = match pair_tag {
                InteractionTag::HL => k2 <= k1 - ka,
                InteractionTag::LH => k1 <= k2 - ka,
                InteractionTag::HH => (k1 - k2).abs() < ka,
                _ => unreachable!(),
            };
            if hit {
                any = true;
                for (s, v) in second.iter_mut().zip(&gb[i2]) {
                    *s += v;
                }
            }
        }
        if any {
            for ((a, x), y) in acc.iter_mut().zip(&fb[i1]).zip(&second) {
                *a += x * y;
            }
        }
    }
    let out = PhysField::new(&grid, acc)?;
    Ok(if dealias {
        out.to_spectral().dealias().to_physical()
    } else {
        out
    })
}
