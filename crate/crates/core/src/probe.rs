//! Error budget of a charged mechanical probe.
//!
//! The probe is an oscillator of mass `m` and eigenfrequency `ω` (`ω = 0` is a
//! free charge) used to follow motion of characteristic frequency `Ω` over a
//! time `τ`. Its optimal position error and the force it can resolve obey
//! `Δx · δF = ħ/τ`; with `F = QE` this gives the field error
//! `δE_mech = ħc / (Δx · cτ · Q)`.
//!
//! The formulas carry explicit `ħ` and `c`, so they hold unchanged in natural
//! and Gaussian-CGS units.

use crate::error::{positive, Error, Result};
use crate::units::UnitSystem;

/// Relative guard on `|Ω² − ω²|` below which the probe formulas are singular.
pub const FREQUENCY_GUARD: f64 = 1e-9;

/// `|Ω² − ω²|`, rejecting resonance.
fn detuning(motion_frequency: f64, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::NonPositive {
            name: "omega",
            value: omega,
        });
    }
    if !(motion_frequency.is_finite() && motion_frequency >= 0.0) {
        return Err(Error::NonPositive {
            name: "motion_frequency",
            value: motion_frequency,
        });
    }
    let (a, b) = (motion_frequency * motion_frequency, omega * omega);
    let d = (a - b).abs();
    if d <= FREQUENCY_GUARD * a.max(b) || d == 0.0 {
        return Err(Error::DegenerateFrequencies {
            motion: motion_frequency,
            omega,
        });
    }
    Ok(d)
}

/// `Δx = sqrt(ħ / (m τ |Ω² − ω²|))`.
pub fn optimal_position_error(
    m: f64,
    tau: f64,
    motion_frequency: f64,
    omega: f64,
    system: &UnitSystem,
) -> Result<f64> {
    positive("m", m)?;
    positive("tau", tau)?;
    let d = detuning(motion_frequency, omega)?;
    Ok((system.hbar / (m * tau * d)).sqrt())
}

/// `δF = sqrt(m ħ |Ω² − ω²| / τ)`.
pub fn optimal_force_error(
    m: f64,
    tau: f64,
    motion_frequency: f64,
    omega: f64,
    system: &UnitSystem,
) -> Result<f64> {
    positive("m", m)?;
    positive("tau", tau)?;
    let d = detuning(motion_frequency, omega)?;
    Ok((m * system.hbar * d / tau).sqrt())
}

/// `δE_mech = ħc / (Δx · cτ · Q)`.
pub fn mechanical_field_error(delta_x: f64, tau: f64, q: f64, system: &UnitSystem) -> Result<f64> {
    positive("delta_x", delta_x)?;
    positive("tau", tau)?;
    positive("Q", q)?;
    Ok(system.hbar * system.c / (delta_x * system.c * tau * q))
}

/// Charged mechanical meter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeBody {
    pub charge: f64,
    pub mass: f64,
    /// Eigenfrequency of the probe oscillator; zero for a free charge.
    pub omega: f64,
    /// Characteristic frequency of the measured motion.
    pub motion_frequency: f64,
    /// Position error of the meter; `None` uses the optimal value.
    pub delta_x: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeReport {
    pub delta_x: f64,
    pub delta_f: f64,
    pub delta_e_mech: f64,
}

impl ProbeBody {
    pub fn new(charge: f64, mass: f64, omega: f64, motion_frequency: f64) -> Result<Self> {
        positive("Q", charge)?;
        positive("m", mass)?;
        detuning(motion_frequency, omega)?;
        Ok(Self {
            charge,
            mass,
            omega,
            motion_frequency,
            delta_x: None,
        })
    }

    pub fn with_delta_x(mut self, delta_x: f64) -> Result<Self> {
        self.delta_x = Some(positive("delta_x", delta_x)?);
        Ok(self)
    }

    /// Position error, resolvable force and resulting field error over `tau`.
    pub fn budget(&self, tau: f64, system: &UnitSystem) -> Result<ProbeReport> {
        let optimal = optimal_position_error(
            self.mass,
            tau,
            self.motion_frequency,
            self.omega,
            system,
        )?;
        let delta_x = self.delta_x.unwrap_or(optimal);
        Ok(ProbeReport {
            delta_x,
            delta_f: optimal_force_error(
                self.mass,
                tau,
                self.motion_frequency,
                self.omega,
                system,
            )?,
            delta_e_mech: mechanical_field_error(delta_x, tau, self.charge, system)?,
        })
    }
}
