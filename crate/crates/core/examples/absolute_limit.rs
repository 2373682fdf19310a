//! The absolute limit across its three branches in l/(cτ).

use rpi_meter::backreaction::{absolute_limit, MeasurementPlan};
use rpi_meter::units::UnitSystem;

fn main() -> rpi_meter::Result<()> {
    let nat = UnitSystem::natural();
    println!("{:>10} {:>12} {:>16} {:>12} {:>10}", "tau", "rho", "regime", "dE_abs", "cells");
    for tau in [1e-2, 0.5, 1.0, 2.0, 100.0, 137.0, 1e3, 1e5] {
        let b = absolute_limit(1.0, tau, &nat)?;
        println!(
            "{tau:>10} {:>12.4e} {:>16} {:>12.5e} {:>10}",
            b.rho, b.regime, b.delta_e_abs, b.subregion_count
        );
    }

    // at l/(cτ) = 1/137 the quantized limit is 2e/l²; 1/6 is the rounded value
    let b = absolute_limit(1.0, 137.0, &nat)?;
    println!("l = 1, tau = 137: {:.5} vs 1/6 = {:.5}", b.delta_e_abs, 1.0 / 6.0);

    let free = MeasurementPlan::new(1.0, 1e4, nat)?.without_charge_quantization().evaluate()?;
    let quant = absolute_limit(1.0, 1e4, &nat)?;
    println!(
        "tau = 1e4: without quantization {:.4e} (Q = {:.3e}), with {:.4e} (Q = {:.3e})",
        free.delta_e_abs, free.q_opt, quant.delta_e_abs, quant.q_opt
    );

    let cgs = UnitSystem::cgs();
    let lab = absolute_limit(1.0, 1e-9, &cgs)?;
    println!("1 cm, 1 ns in CGS: {} branch, {:.3e} statvolt/cm", lab.regime, lab.delta_e_abs);
    Ok(())
}
