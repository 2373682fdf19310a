//! Position and force errors of an oscillator probe and the resulting field error.

use rpi_meter::probe::ProbeBody;
use rpi_meter::units::UnitSystem;

fn main() -> rpi_meter::Result<()> {
    let nat = UnitSystem::natural();
    let free = ProbeBody::new(1.0, 1.0, 0.0, 2.0)?;
    for tau in [1.0, 4.0, 16.0] {
        let r = free.budget(tau, &nat)?;
        println!(
            "tau {tau:>4}: dx {:.4}  dF {:.4}  dE_mech {:.4}  dx*dF*tau {:.3}",
            r.delta_x,
            r.delta_f,
            r.delta_e_mech,
            r.delta_x * r.delta_f * tau
        );
    }

    // a bound oscillator near resonance needs a much larger position error
    let bound = ProbeBody::new(1.0, 1.0, 1.99, 2.0)?;
    println!("near resonance: dx {:.4}", bound.budget(1.0, &nat)?.delta_x);

    match ProbeBody::new(1.0, 1.0, 2.0, 2.0) {
        Err(e) => println!("exact resonance rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
