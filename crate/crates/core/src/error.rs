use thiserror::Error;

/// Errors produced by the measurability calculators and the verification engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A physical quantity that must be strictly positive and finite was not.
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    /// A physical constraint between inputs was violated (e.g. Δx > l).
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// |Ω² − ω²| vanishes, so the probe formulas are singular.
    #[error("degenerate frequencies: motion frequency {motion} and probe eigenfrequency {omega} coincide")]
    DegenerateFrequencies { motion: f64, omega: f64 },

    /// The weighted Gaussian integral does not converge: the weight leaves a flat direction.
    #[error("non-convergent path integral: weight does not damp mode {mode} (frequency {frequency})")]
    NonConvergent { mode: usize, frequency: f64 },

    /// A factorization pivot ratio exceeded the conditioning guard.
    #[error("ill-conditioned {what}: pivot ratio {ratio:.3e} exceeds {limit:.1e}")]
    IllConditioned {
        what: &'static str,
        ratio: f64,
        limit: f64,
    },

    /// Lattice or mode parameters outside the supported range.
    #[error("invalid lattice: {0}")]
    Lattice(String),

    /// A variance sweep that cannot be fitted.
    #[error("degenerate sweep: {0}")]
    DegenerateSweep(String),

    /// Empty input where at least one element is required.
    #[error("empty input: {0}")]
    Empty(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks that `value` is strictly positive and finite.
pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
