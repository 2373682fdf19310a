//! Desk-scale evaluation of the weighted path integral for free-field modes.
//!
//! The free field in a periodic box is a set of independent transverse
//! oscillators. Each is sliced in time, the weight functional is applied to its
//! sliced electric readout, and the resulting finite-dimensional complex
//! Gaussian integrals are done in closed form. The readout law that comes out
//! can then be compared against `δ² = Δ² + C/(Ω²Δ²)` with `C = 4`.

pub mod fit;
pub mod linalg;
pub mod model;
pub mod modes;

pub use fit::{fit_variance_law, log_sweep, VarianceFit};
pub use model::{
    build_mode_model, log_restricted_amplitude, output_distribution, restricted_amplitude,
    variance_sweep, GaussianModel, ModeBlock, OutputDistribution, WeightSpec,
};
pub use modes::{transverse_shells, LatticeSpec, Shell, MAX_MODES, MAX_TIME_STEPS};
