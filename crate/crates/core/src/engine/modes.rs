//! Transverse modes of the free field in a periodic box, and the time lattice.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rpi::Region;

pub const MAX_MODES: usize = 64;
pub const MAX_TIME_STEPS: usize = 512;
/// Transverse polarizations per wave vector.
pub const POLARIZATIONS: u32 = 2;

/// All wave vectors `2π n / l` with the same `|n|² = norm_sq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shell {
    pub norm_sq: u32,
    /// Number of integer vectors `n` with `|n|² = norm_sq`.
    pub lattice_points: u32,
}

impl Shell {
    pub fn degeneracy(&self) -> u32 {
        POLARIZATIONS * self.lattice_points
    }

    pub fn frequency(&self, l: f64) -> f64 {
        2.0 * PI * f64::from(self.norm_sq).sqrt() / l
    }
}

/// Number of integer vectors in Z³ with squared norm `s`.
fn lattice_points(s: u32) -> u32 {
    let r = (f64::from(s).sqrt() as i64) + 1;
    let s = i64::from(s);
    let mut count = 0;
    for a in -r..=r {
        for b in -r..=r {
            let rest = s - a * a - b * b;
            if rest < 0 {
                continue;
            }
            let c = (rest as f64).sqrt().round() as i64;
            if c * c == rest {
                count += if c == 0 { 1 } else { 2 };
            }
        }
    }
    count
}

/// The first `count` non-empty shells with `|n|² ≥ 1` (the uniform `k = 0` mode is excluded).
pub fn transverse_shells(count: usize) -> Vec<Shell> {
    (1u32..)
        .map(|s| Shell {
            norm_sq: s,
            lattice_points: lattice_points(s),
        })
        .filter(|sh| sh.lattice_points > 0)
        .take(count)
        .collect()
}

/// Time lattice and mode content of a discretized measurement region.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    /// Number of time nodes `N_t`; the first node is fixed, leaving `N_t − 1` free ones.
    pub time_steps: usize,
    pub duration: f64,
    pub four_volume: f64,
    pub mode_frequencies: Vec<f64>,
    /// Share of the four-volume carried by each mode; sums to `four_volume`.
    pub mode_volume_weights: Vec<f64>,
}

impl LatticeSpec {
    pub fn new(
        region: &Region,
        time_steps: usize,
        mode_frequencies: Vec<f64>,
        mode_volume_weights: Vec<f64>,
    ) -> Result<Self> {
        if !(2..=MAX_TIME_STEPS).contains(&time_steps) {
            return Err(Error::Lattice(format!(
                "time_steps = {time_steps} outside 2..={MAX_TIME_STEPS}"
            )));
        }
        if mode_frequencies.is_empty() || mode_frequencies.len() > MAX_MODES {
            return Err(Error::Lattice(format!(
                "mode count {} outside 1..={MAX_MODES}",
                mode_frequencies.len()
            )));
        }
        if mode_frequencies.len() != mode_volume_weights.len() {
            return Err(Error::Lattice("one volume weight per mode required".into()));
        }
        if let Some(w) = mode_frequencies.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::Lattice(format!("invalid mode frequency {w}")));
        }
        if let Some(v) = mode_volume_weights.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Lattice(format!("invalid volume weight {v}")));
        }
        let omega = region.four_volume();
        let total: f64 = mode_volume_weights.iter().sum();
        if ((total - omega) / omega).abs() > 1e-12 {
            return Err(Error::Lattice(format!(
                "volume weights sum to {total}, expected four-volume {omega}"
            )));
        }
        Ok(Self {
            time_steps,
            duration: region.tau(),
            four_volume: omega,
            mode_frequencies,
            mode_volume_weights,
        })
    }

    /// The lowest `mode_count` transverse shells of a box of size `region.l()`,
    /// weighted by polarization-counted degeneracy.
    pub fn box_modes(region: &Region, mode_count: usize, time_steps: usize) -> Result<Self> {
        if mode_count == 0 || mode_count > MAX_MODES {
            return Err(Error::Lattice(format!(
                "mode_count = {mode_count} outside 1..={MAX_MODES}"
            )));
        }
        let shells = transverse_shells(mode_count);
        let total: f64 = shells.iter().map(|s| f64::from(s.degeneracy())).sum();
        let omega = region.four_volume();
        let freqs = shells.iter().map(|s| s.frequency(region.l())).collect();
        let mut weights: Vec<f64> = shells
            .iter()
            .map(|s| omega * f64::from(s.degeneracy()) / total)
            .collect();
        // put the rounding residue on the largest share
        let residue = omega - weights.iter().sum::<f64>();
        if let Some(w) = weights.iter_mut().max_by(|a, b| a.total_cmp(b)) {
            *w += residue;
        }
        Self::new(region, time_steps, freqs, weights)
    }

    pub fn single_mode(region: &Region, frequency: f64, time_steps: usize) -> Result<Self> {
        Self::new(region, time_steps, vec![frequency], vec![region.four_volume()])
    }

    pub fn mode_count(&self) -> usize {
        self.mode_frequencies.len()
    }

    /// Free lattice nodes (and readout links) per mode.
    pub fn dof_per_mode(&self) -> usize {
        self.time_steps - 1
    }

    pub fn step(&self) -> f64 {
        self.duration / self.dof_per_mode() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_shells() {
        let shells = transverse_shells(4);
        let pts: Vec<_> = shells.iter().map(|s| (s.norm_sq, s.lattice_points)).collect();
        assert_eq!(pts, vec![(1, 6), (2, 12), (3, 8), (4, 6)]);
        let f: Vec<_> = shells.iter().map(|s| s.frequency(1.0)).collect();
        let two_pi = 2.0 * PI;
        let expected = [two_pi, two_pi * 2f64.sqrt(), two_pi * 3f64.sqrt(), 2.0 * two_pi];
        for (a, b) in f.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_shells_skipped() {
        // |n|² = 7 has no representation as a sum of three squares
        let shells = transverse_shells(7);
        assert!(shells.iter().all(|s| s.norm_sq != 7));
        assert_eq!(shells.last().unwrap().norm_sq, 8);
    }

    #[test]
    fn box_weights_sum_to_four_volume() {
        let region = Region::new(1.0, 2.0).unwrap();
        let spec = LatticeSpec::box_modes(&region, 4, 8).unwrap();
        let total: f64 = spec.mode_volume_weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-12 * 2.0);
        // degeneracies 12, 24, 16, 12 out of 64
        assert!((spec.mode_volume_weights[1] - 2.0 * 24.0 / 64.0).abs() < 1e-12);
        assert_eq!(spec.dof_per_mode(), 7);
    }

    #[test]
    fn limits_enforced() {
        let region = Region::new(1.0, 1.0).unwrap();
        assert!(LatticeSpec::box_modes(&region, 0, 8).is_err());
        assert!(LatticeSpec::box_modes(&region, 65, 8).is_err());
        assert!(LatticeSpec::box_modes(&region, 1, 1).is_err());
        assert!(LatticeSpec::box_modes(&region, 1, 513).is_err());
        assert!(LatticeSpec::new(&region, 4, vec![0.0], vec![0.5]).is_err());
    }
}
