//! Physical constants and unit conversion.
//!
//! Every calculator works in natural units (ħ = c = 1). Gaussian-CGS values are
//! converted at the boundary, with the natural unit of length fixed to one
//! centimetre. Charges follow the Gaussian convention, so the Coulomb field of a
//! charge `Q` at distance `l` is `Q / l²` and `e² = α ħ c`.

use std::fmt;
use std::str::FromStr;

/// Reduced Planck constant in erg·s.
pub const HBAR_CGS: f64 = 1.054_571_817e-27;
/// Speed of light in cm/s.
pub const C_CGS: f64 = 2.997_924_58e10;
/// Inverse fine-structure constant, CODATA 2018.
pub const INV_ALPHA_CODATA: f64 = 137.035_999_084;
/// Rounded inverse fine-structure constant used for the charge-quantization boundary.
pub const INV_ALPHA_ROUNDED: f64 = 137.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnitKind {
    #[default]
    Natural,
    GaussianCgs,
}

/// Which value of the fine-structure constant to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AlphaMode {
    /// α = 1/137 exactly.
    #[default]
    PaperExact,
    /// α = 1/137.035999084.
    Codata,
}

impl AlphaMode {
    pub fn alpha(self) -> f64 {
        match self {
            AlphaMode::PaperExact => 1.0 / INV_ALPHA_ROUNDED,
            AlphaMode::Codata => 1.0 / INV_ALPHA_CODATA,
        }
    }
}

/// Physical dimension of a value crossing the unit boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    Length,
    Time,
    /// Electric or magnetic field amplitude.
    Field,
    Charge,
    Mass,
    /// Angular frequency (rad per unit time).
    Frequency,
    Force,
    Action,
    /// Spacetime four-volume `τ l³`.
    FourVolume,
}

/// A consistent set of constants: `alpha · hbar · c = e²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub kind: UnitKind,
    pub hbar: f64,
    pub c: f64,
    pub e: f64,
    pub alpha: f64,
    pub alpha_mode: AlphaMode,
}

impl Default for UnitSystem {
    fn default() -> Self {
        constants(UnitKind::Natural, AlphaMode::PaperExact)
    }
}

/// Builds the constant set for a unit system.
pub fn constants(kind: UnitKind, alpha_mode: AlphaMode) -> UnitSystem {
    let alpha = alpha_mode.alpha();
    let (hbar, c) = match kind {
        UnitKind::Natural => (1.0, 1.0),
        UnitKind::GaussianCgs => (HBAR_CGS, C_CGS),
    };
    UnitSystem {
        kind,
        hbar,
        c,
        e: (alpha * hbar * c).sqrt(),
        alpha,
        alpha_mode,
    }
}

impl UnitSystem {
    pub fn natural() -> Self {
        constants(UnitKind::Natural, AlphaMode::PaperExact)
    }

    pub fn cgs() -> Self {
        constants(UnitKind::GaussianCgs, AlphaMode::PaperExact)
    }

    pub fn with_alpha(self, alpha_mode: AlphaMode) -> Self {
        constants(self.kind, alpha_mode)
    }

    /// Size of one natural unit of `q` expressed in this system.
    pub fn scale(&self, q: Quantity) -> f64 {
        let (hbar, c) = (self.hbar, self.c);
        match q {
            Quantity::Length => 1.0,
            Quantity::Time | Quantity::FourVolume => 1.0 / c,
            Quantity::Field | Quantity::Charge => (hbar * c).sqrt(),
            Quantity::Mass => hbar / c,
            Quantity::Frequency => c,
            Quantity::Force => hbar * c,
            Quantity::Action => hbar,
        }
    }

    pub fn to_natural(&self, value: f64, q: Quantity) -> f64 {
        value / self.scale(q)
    }

    pub fn from_natural(&self, value: f64, q: Quantity) -> f64 {
        value * self.scale(q)
    }

    /// Elementary charge in natural units, `sqrt(α)`.
    pub fn e_natural(&self) -> f64 {
        self.alpha.sqrt()
    }
}

pub fn field_to_natural(value: f64, system: &UnitSystem) -> f64 {
    system.to_natural(value, Quantity::Field)
}

pub fn field_from_natural(value: f64, system: &UnitSystem) -> f64 {
    system.from_natural(value, Quantity::Field)
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitKind::Natural => "natural",
            UnitKind::GaussianCgs => "cgs",
        })
    }
}

impl FromStr for UnitKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "natural" => Ok(UnitKind::Natural),
            "cgs" => Ok(UnitKind::GaussianCgs),
            other => Err(format!("unknown unit system '{other}' (expected natural|cgs)")),
        }
    }
}

impl fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlphaMode::PaperExact => "paper",
            AlphaMode::Codata => "codata",
        })
    }
}

impl FromStr for AlphaMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(AlphaMode::PaperExact),
            "codata" => Ok(AlphaMode::Codata),
            other => Err(format!("unknown alpha mode '{other}' (expected paper|codata)")),
        }
    }
}
