//! Amplitude of a readout and the Gaussian law of readouts around a classical source.

use rpi_meter::engine::{
    build_mode_model, output_distribution, restricted_amplitude, WeightSpec,
};
use rpi_meter::rpi::Region;

fn main() -> rpi_meter::Result<()> {
    let region = Region::new(1.0, 0.5)?;
    let source = [0.8, -1.5];
    let (spec, model) = build_mode_model(&region, 2, 12, Some(&source))?;
    println!("mode frequencies {:?}", spec.mode_frequencies);

    let weight = WeightSpec::new(0.4, region.four_volume())?;
    let dist = output_distribution(&model, &weight)?;
    let classical = model.classical_readout()?;
    let worst = dist
        .mean
        .iter()
        .zip(&classical)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("max |mean - classical| = {worst:.2e}");
    println!("output uncertainty of the averaged readout: {:.5}", dist.uncertainty());

    let at_peak = restricted_amplitude(&model, &weight, &classical)?;
    let off: Vec<f64> = classical.iter().map(|x| x + 0.3).collect();
    let shifted = restricted_amplitude(&model, &weight, &off)?;
    println!("|U| at classical readout {:.4e}, shifted by 0.3: {:.4e}", at_peak.norm(), shifted.norm());
    Ok(())
}
