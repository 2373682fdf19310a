//! CSV map of the absolute limit over a logarithmic (l, τ) grid.
//!
//! `cargo run --example measurability_map > map.csv`

use rpi_meter::backreaction::absolute_limit;
use rpi_meter::cli::{emit_table, limit_row, log_grid, MAP_HEADER};
use rpi_meter::units::UnitSystem;

fn main() -> rpi_meter::Result<()> {
    let nat = UnitSystem::natural();
    let mut rows = Vec::new();
    for &l in &log_grid(1e-2, 1e2, 9) {
        for &tau in &log_grid(1e-2, 1e4, 13) {
            rows.push(limit_row(l, tau, &absolute_limit(l, tau, &nat)?));
        }
    }
    print!("{}", emit_table(&MAP_HEADER, &rows));
    Ok(())
}
