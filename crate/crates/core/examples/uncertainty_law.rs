//! Output uncertainty versus device resolution, and the three regimes.

use rpi_meter::rpi::{minimal_uncertainty, optimal_resolution, output_uncertainty, Region, Resolution};
use rpi_meter::units::UnitSystem;

fn main() -> rpi_meter::Result<()> {
    // Ω = τ l³ = 4
    let region = Region::new(1.0, 4.0)?;
    let opt = optimal_resolution(&region);
    println!("four-volume {}  delta_opt {:.6}", region.four_volume(), opt.delta_e);
    println!("{:>12} {:>14} {:>12}", "delta", "delta_out", "regime");
    for k in -6..=6 {
        let d = opt.delta_e * 10f64.powf(k as f64 / 2.0);
        let rep = output_uncertainty(&region, &Resolution::uniform(d)?);
        println!("{d:>12.4e} {:>14.6e} {:>12}", rep.delta_e_out, rep.regime);
    }

    let cgs = UnitSystem::cgs();
    let lab = Region::from_units(1.0, 1e-9, &cgs)?; // 1 cm, 1 ns
    println!(
        "1 cm box over 1 ns: best attainable field uncertainty {:.3e} statvolt/cm",
        minimal_uncertainty(&lab, &cgs)
    );
    Ok(())
}
