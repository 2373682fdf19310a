//! Monte Carlo measurement outputs and their empirical moments.

use rpi_meter::rpi::{Region, Resolution};
use rpi_meter::sampler::{cell_spread, empirical_stats, sample_outputs, FieldConfiguration};

fn main() -> rpi_meter::Result<()> {
    // Ω = 1 and Δ = sqrt(2) give δ = 2
    let region = Region::new(1.0, 1.0)?;
    let res = Resolution::uniform(2f64.sqrt())?;
    for cells in [1, 8] {
        let classical = FieldConfiguration::uniform(cells, [0.5, 0.0, -0.5], [0.0; 3])?;
        let samples = sample_outputs(&classical, &region, &res, 100_000, 42)?;
        let st = empirical_stats(&samples, &classical)?;
        let s = cell_spread(&region, &res, cells);
        println!(
            "K = {cells}: sigma {:.3}  sd(E) {:.4}  mean square per component {:.4}  per vector {:.4}",
            s.sigma_e,
            st.per_component_sd_e,
            st.norm_sq_e,
            st.vector_norm_sq_e()
        );
    }
    Ok(())
}
