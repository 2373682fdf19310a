//! Lattice path integral over box modes: resolution sweep and fit of the variance law.

use rpi_meter::engine::{
    build_mode_model, fit_variance_law, log_sweep, variance_sweep, GaussianModel, LatticeSpec,
};
use rpi_meter::rpi::Region;

fn main() -> rpi_meter::Result<()> {
    // ωτ ≪ 1 for the lowest shells of this box
    let region = Region::new(1.0, 0.01)?;
    let omega = region.four_volume();
    let deltas = log_sweep((2.0 / omega).sqrt(), 4.0, 17);
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "N_t", "C", "p", "residual", "plateau");
    for steps in [16, 64, 256] {
        let (_, model) = build_mode_model(&region, 16, steps, None)?;
        let sweep = variance_sweep(&model, &deltas)?;
        let fit = fit_variance_law(&sweep, omega)?;
        let (d, v) = sweep[sweep.len() - 1];
        println!(
            "{steps:>6} {:>10.5} {:>10.6} {:>10.2e} {:>10.7}",
            fit.c,
            fit.quantum_exponent,
            fit.residual,
            v / (d * d)
        );
    }

    // a single ω = 0 mode reproduces the coefficient 4
    let unit = Region::new(1.0, 1.0)?;
    let zero = GaussianModel::from_lattice(&LatticeSpec::single_mode(&unit, 0.0, 64)?, None)?;
    let sweep = variance_sweep(&zero, &log_sweep(2f64.sqrt(), 4.0, 9))?;
    println!("single zero mode: C = {:.9}", fit_variance_law(&sweep, 1.0)?.c);
    Ok(())
}
