//! Uncertainty budget of an undisturbing field measurement.
//!
//! A probe of charge `Q` read with position error `Δx` over a region of size
//! `l` and duration `τ` contributes the mechanical error `ħc/(Δx cτ Q)` and its
//! own Coulomb field `Q/l²`. Minimizing over `Q` and `Δx` gives the absolute
//! limit, which is piecewise in `ρ = l/(cτ)`:
//!
//! | branch            | range      | `δE_abs`              |
//! |-------------------|------------|-----------------------|
//! | `ChargeQuantized` | `ρ < α`    | `2e / l²`             |
//! | `Generic`         | `α ≤ ρ < 1`| `2 sqrt(ħ / (τ l³))`  |
//! | `Acausal`         | `ρ ≥ 1`    | `2 sqrt(ħc) / (cτ)²`  |
//!
//! Every formula is written with explicit `ħ` and `c`, so inputs and outputs are
//! in the units of the supplied [`UnitSystem`].

use std::fmt;

use crate::error::{positive, Error, Result};
use crate::units::UnitSystem;

/// Coulomb field `Q / l²` of the probe body at a typical point of the region.
pub fn proper_field(q: f64, l: f64) -> f64 {
    q / (l * l)
}

fn check_dx(delta_x: f64, limit: f64, what: &str) -> Result<()> {
    positive("delta_x", delta_x)?;
    // relative slack absorbs unit-conversion rounding
    if delta_x > limit * (1.0 + 1e-12) {
        return Err(Error::Constraint(format!(
            "delta_x = {delta_x} exceeds {what} = {limit}"
        )));
    }
    Ok(())
}

/// `δE = ħc/(Δx cτ Q) + Q/l²`.
pub fn total_uncertainty(delta_x: f64, tau: f64, q: f64, l: f64, system: &UnitSystem) -> Result<f64> {
    positive("tau", tau)?;
    positive("Q", q)?;
    positive("l", l)?;
    check_dx(delta_x, l, "l")?;
    Ok(mechanical_term(delta_x, tau, q, system) + proper_field(q, l))
}

fn mechanical_term(delta_x: f64, tau: f64, q: f64, system: &UnitSystem) -> f64 {
    system.hbar * system.c / (delta_x * system.c * tau * q)
}

/// `Q_opt = sqrt(ħc l² / (Δx cτ))`, the charge that balances both terms.
pub fn optimal_charge(l: f64, tau: f64, delta_x: f64, system: &UnitSystem) -> Result<f64> {
    positive("l", l)?;
    positive("tau", tau)?;
    check_dx(delta_x, l, "l")?;
    Ok((system.hbar * system.c * l * l / (delta_x * system.c * tau)).sqrt())
}

/// `δE_opt = 2 sqrt(ħc / (Δx cτ l²))`.
pub fn optimal_uncertainty(l: f64, tau: f64, delta_x: f64, system: &UnitSystem) -> Result<f64> {
    positive("l", l)?;
    positive("tau", tau)?;
    check_dx(delta_x, l, "l")?;
    Ok(2.0 * (system.hbar * system.c / (delta_x * system.c * tau * l * l)).sqrt())
}

/// RPI minimum for an elementary causal cell of size `lambda`: `2 sqrt(ħ / (τ λ³))`.
pub fn elementary_uncertainty(lambda: f64, tau: f64, system: &UnitSystem) -> Result<f64> {
    positive("lambda", lambda)?;
    positive("tau", tau)?;
    Ok(2.0 * (system.hbar / (tau * lambda.powi(3))).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeRule {
    pub delta_x_used: f64,
    pub q_opt: f64,
    /// The optimal charge at `Δx = l` would fall below `e`.
    pub quantized: bool,
}

/// Position error from `l/Δx = max(1, α cτ / l)` and the optimal charge there.
pub fn quantized_charge_rule(l: f64, tau: f64, system: &UnitSystem) -> Result<ChargeRule> {
    positive("l", l)?;
    positive("tau", tau)?;
    let rho = l / (system.c * tau);
    let quantized = rho < system.alpha;
    let delta_x_used = if quantized { l * rho / system.alpha } else { l };
    Ok(ChargeRule {
        delta_x_used,
        q_opt: optimal_charge(l, tau, delta_x_used, system)?,
        quantized,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitRegime {
    Generic,
    ChargeQuantized,
    Acausal,
}

impl fmt::Display for LimitRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitRegime::Generic => "Generic",
            LimitRegime::ChargeQuantized => "ChargeQuantized",
            LimitRegime::Acausal => "Acausal",
        })
    }
}

/// Absolute limit together with the probe configuration that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitBreakdown {
    pub regime: LimitRegime,
    pub rho: f64,
    pub delta_e_abs: f64,
    /// Optimal probe charge (per causal cell in the acausal branch).
    pub q_opt: f64,
    pub delta_x_used: f64,
    /// Proper field of the probe at the optimum.
    pub e_meas: f64,
    /// Causal cell size, `min(l, cτ)`.
    pub lambda: f64,
    pub subregion_count: u64,
    /// The `q ≥ e` clamp changed the charge.
    pub charge_clamped: bool,
}

/// Inputs to the absolute-limit optimization, in `system` units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementPlan {
    pub l: f64,
    pub tau: f64,
    /// Override for the probe position error; may only be lowered below the default.
    pub delta_x: Option<f64>,
    pub enforce_charge_quantization: bool,
    pub system: UnitSystem,
}

impl MeasurementPlan {
    pub fn new(l: f64, tau: f64, system: UnitSystem) -> Result<Self> {
        Ok(Self {
            l: positive("l", l)?,
            tau: positive("tau", tau)?,
            delta_x: None,
            enforce_charge_quantization: true,
            system,
        })
    }

    pub fn with_delta_x(mut self, delta_x: f64) -> Result<Self> {
        positive("delta_x", delta_x)?;
        self.delta_x = Some(delta_x);
        Ok(self)
    }

    pub fn without_charge_quantization(mut self) -> Self {
        self.enforce_charge_quantization = false;
        self
    }

    pub fn rho(&self) -> f64 {
        self.l / (self.system.c * self.tau)
    }

    pub fn evaluate(&self) -> Result<LimitBreakdown> {
        let sys = &self.system;
        let rho = self.rho();
        let (regime, lambda, default_dx) = if rho >= 1.0 {
            let ct = sys.c * self.tau;
            (LimitRegime::Acausal, ct, ct)
        } else if self.enforce_charge_quantization && rho < sys.alpha {
            let rule = quantized_charge_rule(self.l, self.tau, sys)?;
            (LimitRegime::ChargeQuantized, self.l, rule.delta_x_used)
        } else {
            (LimitRegime::Generic, self.l, self.l)
        };
        let delta_x = match self.delta_x {
            Some(dx) => {
                check_dx(dx, default_dx, "the default position error")?;
                dx
            }
            None => default_dx,
        };

        let mut q = optimal_charge(lambda, self.tau, delta_x, sys)?;
        let mut charge_clamped = false;
        if self.enforce_charge_quantization && q < sys.e {
            // exact boundary values may land a rounding error below e
            charge_clamped = q < sys.e * (1.0 - 1e-12);
            q = sys.e;
        }
        let delta_e_abs = total_uncertainty(delta_x, self.tau, q, lambda, sys)?;
        Ok(LimitBreakdown {
            regime,
            rho,
            delta_e_abs,
            q_opt: q,
            delta_x_used: delta_x,
            e_meas: proper_field(q, lambda),
            lambda,
            subregion_count: subregion_count(self.l, lambda),
            charge_clamped,
        })
    }
}

/// `ceil(l/λ)³`, saturating.
fn subregion_count(l: f64, lambda: f64) -> u64 {
    let per_axis = (l / lambda * (1.0 - 1e-12)).ceil().max(1.0);
    if per_axis >= 2_642_245.0 {
        return u64::MAX;
    }
    let n = per_axis as u64;
    n * n * n
}

/// Absolute limit with the default probe configuration and charge quantization enforced.
pub fn absolute_limit(l: f64, tau: f64, system: &UnitSystem) -> Result<LimitBreakdown> {
    MeasurementPlan::new(l, tau, *system)?.evaluate()
}
