//! Output-uncertainty law of the restricted path integral.
//!
//! A measurement of resolution `Δ` over a region of four-volume `Ω` produces
//! outputs scattered around the classical field with width
//! `δ² = Δ² + 4 / (Ω² Δ²)`. The width is minimal, `δ_min = 2 / sqrt(Ω)`, at
//! `Δ_opt = sqrt(2 / Ω)`. All quantities here are in natural units.

use std::fmt;

use crate::error::{positive, Result};
use crate::units::{Quantity, UnitSystem};

/// Default ratio separating the classical and quantum regimes from the borderline band.
pub const DEFAULT_REGIME_THRESHOLD: f64 = 10.0;

/// Spacetime box of linear size `l` and duration `tau`, natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    l: f64,
    tau: f64,
}

impl Region {
    pub fn new(l: f64, tau: f64) -> Result<Self> {
        Ok(Self {
            l: positive("l", l)?,
            tau: positive("tau", tau)?,
        })
    }

    /// Region from a length and duration given in `system` units.
    pub fn from_units(l: f64, tau: f64, system: &UnitSystem) -> Result<Self> {
        positive("l", l)?;
        positive("tau", tau)?;
        Self::new(
            system.to_natural(l, Quantity::Length),
            system.to_natural(tau, Quantity::Time),
        )
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `Ω = τ l³`.
    pub fn four_volume(&self) -> f64 {
        self.tau * self.l.powi(3)
    }

    /// `l / (c τ)`; above 1 the region is not causally connected.
    pub fn causal_ratio(&self) -> f64 {
        self.l / self.tau
    }
}

/// Device resolution of the weight functional for the E and H channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    pub delta_e: f64,
    pub delta_h: f64,
}

impl Resolution {
    pub fn new(delta_e: f64, delta_h: f64) -> Result<Self> {
        Ok(Self {
            delta_e: positive("delta_E", delta_e)?,
            delta_h: positive("delta_H", delta_h)?,
        })
    }

    /// Same resolution for both channels.
    pub fn uniform(delta: f64) -> Result<Self> {
        Self::new(delta, delta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `Δ ≫ sqrt(2/Ω)`: output width equals the device resolution.
    Classical,
    /// `Δ ≪ sqrt(2/Ω)`: output width is `2/(ΩΔ)`.
    Quantum,
    Borderline,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Classical => "classical",
            Regime::Quantum => "quantum",
            Regime::Borderline => "borderline",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub delta_e_out: f64,
    pub delta_h_out: f64,
    /// Regime of the E channel.
    pub regime: Regime,
    pub regime_h: Regime,
    /// Resolution minimizing the output width, `sqrt(2/Ω)`.
    pub delta_opt: f64,
    /// `2 / sqrt(Ω)`.
    pub delta_min: f64,
}

/// `δ = sqrt(Δ² + 4/(Ω²Δ²))` for one field channel.
pub fn channel_uncertainty(four_volume: f64, delta: f64) -> f64 {
    delta.hypot(2.0 / (four_volume * delta))
}

pub fn output_uncertainty(region: &Region, res: &Resolution) -> UncertaintyReport {
    output_uncertainty_with(region, res, DEFAULT_REGIME_THRESHOLD)
}

pub fn output_uncertainty_with(
    region: &Region,
    res: &Resolution,
    threshold: f64,
) -> UncertaintyReport {
    let omega = region.four_volume();
    UncertaintyReport {
        delta_e_out: channel_uncertainty(omega, res.delta_e),
        delta_h_out: channel_uncertainty(omega, res.delta_h),
        regime: classify_regime(region, res.delta_e, threshold),
        regime_h: classify_regime(region, res.delta_h, threshold),
        delta_opt: optimal_delta(region),
        delta_min: 2.0 / omega.sqrt(),
    }
}

/// Classical when `Δ / sqrt(2/Ω) ≥ threshold`, quantum when `≤ 1/threshold`.
pub fn classify_regime(region: &Region, delta: f64, threshold: f64) -> Regime {
    let ratio = delta / optimal_delta(region);
    if ratio >= threshold {
        Regime::Classical
    } else if ratio <= 1.0 / threshold {
        Regime::Quantum
    } else {
        Regime::Borderline
    }
}

fn optimal_delta(region: &Region) -> f64 {
    (2.0 / region.four_volume()).sqrt()
}

pub fn optimal_resolution(region: &Region) -> Resolution {
    let d = optimal_delta(region);
    Resolution {
        delta_e: d,
        delta_h: d,
    }
}

/// `2 sqrt(ħ / (τ l³))`, returned in `system` units.
pub fn minimal_uncertainty(region: &Region, system: &UnitSystem) -> f64 {
    system.from_natural(2.0 / region.four_volume().sqrt(), Quantity::Field)
}
