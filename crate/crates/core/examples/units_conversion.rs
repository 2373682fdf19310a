//! Moving values between natural and Gaussian-CGS units.

use rpi_meter::units::{AlphaMode, Quantity, UnitSystem};

fn main() {
    let cgs = UnitSystem::cgs();
    println!("hbar = {:e} erg s, c = {:e} cm/s", cgs.hbar, cgs.c);
    println!("e (alpha = 1/137)        = {:e} esu", cgs.e);
    println!("e (alpha = CODATA value) = {:e} esu", cgs.with_alpha(AlphaMode::Codata).e);

    // one second is c centimetres of natural time
    let tau = cgs.to_natural(1.0, Quantity::Time);
    println!("1 s  -> {tau:e} cm");

    let field = 1e-3; // statvolt/cm
    let nat = cgs.to_natural(field, Quantity::Field);
    println!("{field} statvolt/cm -> {nat:e} natural -> {:e} back", cgs.from_natural(nat, Quantity::Field));

    for q in [Quantity::Mass, Quantity::Charge, Quantity::Force, Quantity::FourVolume] {
        println!("{q:?}: one natural unit = {:e} CGS", cgs.scale(q));
    }
}
