//! Quantum limits on the measurability of electromagnetic fields.
//!
//! - [`rpi`]: output-uncertainty law `δ² = Δ² + 4/(Ω²Δ²)` and its regimes
//! - [`probe`]: error budget of a charged mechanical meter
//! - [`backreaction`]: proper-field back reaction and the absolute limit
//! - [`engine`]: lattice Gaussian path integral checking the law numerically
//! - [`sampler`]: Monte Carlo measurement outputs
//! - [`cli`]: the `rpi-meter` front end
//!
//! Internally everything is in natural units; [`units`] converts at the edges.

pub mod backreaction;
pub mod cli;
pub mod engine;
pub mod error;
pub mod probe;
pub mod rpi;
pub mod sampler;
pub mod units;

pub use error::{Error, Result};
