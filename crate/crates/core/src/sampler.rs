//! Monte Carlo draws of measurement outputs around a classical configuration.
//!
//! Over `K` coarse cells of equal four-volume `Ω/K`, the output density
//! `exp[−(2/Ω) ∫ (E − E_cl)²/δ²]` factorizes into independent Gaussians with
//! per-component standard deviation `sqrt(K) δ / 2`. The widths `δE`, `δH` come
//! from [`crate::rpi::output_uncertainty`].
//!
//! Draws are grouped in fixed-size chunks; chunk `c` uses ChaCha stream `c` of
//! the run seed, so results do not depend on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rpi::{output_uncertainty, Region, Resolution};

const CHUNK: usize = 1024;

/// E and H vectors on `K` coarse spacetime cells.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldConfiguration {
    pub e: Vec<[f64; 3]>,
    pub h: Vec<[f64; 3]>,
}

impl FieldConfiguration {
    pub fn zeros(cells: usize) -> Result<Self> {
        Self::new(vec![[0.0; 3]; cells], vec![[0.0; 3]; cells])
    }

    pub fn new(e: Vec<[f64; 3]>, h: Vec<[f64; 3]>) -> Result<Self> {
        if e.is_empty() || e.len() != h.len() {
            return Err(Error::Lattice(format!(
                "configuration needs K ≥ 1 cells for both fields, got {} and {}",
                e.len(),
                h.len()
            )));
        }
        if e.iter().chain(&h).flatten().any(|x| !x.is_finite()) {
            return Err(Error::Lattice("non-finite field value".into()));
        }
        Ok(Self { e, h })
    }

    /// Uniform field over `cells` cells.
    pub fn uniform(cells: usize, e: [f64; 3], h: [f64; 3]) -> Result<Self> {
        Self::new(vec![e; cells], vec![h; cells])
    }

    pub fn cells(&self) -> usize {
        self.e.len()
    }
}

/// Widths used by the sampler for a region and resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellSpread {
    pub delta_e: f64,
    pub delta_h: f64,
    pub sigma_e: f64,
    pub sigma_h: f64,
}

pub fn cell_spread(region: &Region, res: &Resolution, cells: usize) -> CellSpread {
    let rep = output_uncertainty(region, res);
    let k = (cells as f64).sqrt();
    CellSpread {
        delta_e: rep.delta_e_out,
        delta_h: rep.delta_h_out,
        sigma_e: k * rep.delta_e_out / 2.0,
        sigma_h: k * rep.delta_h_out / 2.0,
    }
}

/// `n` independent draws; identical for identical `seed`.
pub fn sample_outputs(
    classical: &FieldConfiguration,
    region: &Region,
    res: &Resolution,
    n: usize,
    seed: u64,
) -> Result<Vec<FieldConfiguration>> {
    if n == 0 {
        return Err(Error::Empty("sample count"));
    }
    let spread = cell_spread(region, res, classical.cells());
    let chunks = n.div_ceil(CHUNK);
    let out: Vec<Vec<FieldConfiguration>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(n - c * CHUNK);
            (0..len)
                .map(|_| draw(classical, &spread, &mut rng))
                .collect()
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

fn draw(classical: &FieldConfiguration, s: &CellSpread, rng: &mut ChaCha8Rng) -> FieldConfiguration {
    let mut e = Vec::with_capacity(classical.cells());
    let mut h = Vec::with_capacity(classical.cells());
    for (ce, ch) in classical.e.iter().zip(&classical.h) {
        let mut ve = [0.0; 3];
        let mut vh = [0.0; 3];
        for (v, c) in ve.iter_mut().zip(ce) {
            let z: f64 = StandardNormal.sample(rng);
            *v = c + s.sigma_e * z;
        }
        for (v, c) in vh.iter_mut().zip(ch) {
            let z: f64 = StandardNormal.sample(rng);
            *v = c + s.sigma_h * z;
        }
        e.push(ve);
        h.push(vh);
    }
    FieldConfiguration { e, h }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub n: usize,
    pub empirical_mean: FieldConfiguration,
    /// Sample mean of `(1/K) Σ_cells |E − E_cl|² / 3`, the square-average deviation per component.
    pub norm_sq_e: f64,
    pub norm_sq_h: f64,
    /// Pooled per-component standard deviation about the empirical mean.
    pub per_component_sd_e: f64,
    pub per_component_sd_h: f64,
}

impl SampleStats {
    /// Square-average deviation of the full 3-vector, `3 × norm_sq_e`.
    pub fn vector_norm_sq_e(&self) -> f64 {
        3.0 * self.norm_sq_e
    }

    pub fn vector_norm_sq_h(&self) -> f64 {
        3.0 * self.norm_sq_h
    }
}

pub fn empirical_stats(samples: &[FieldConfiguration], classical: &FieldConfiguration) -> Result<SampleStats> {
    let first = samples.first().ok_or(Error::Empty("samples"))?;
    let k = classical.cells();
    if samples.iter().any(|s| s.cells() != k) || first.cells() != k {
        return Err(Error::Lattice("samples and classical configuration differ in cell count".into()));
    }
    let n = samples.len() as f64;
    let mut mean_e = vec![[0.0; 3]; k];
    let mut mean_h = vec![[0.0; 3]; k];
    let (mut dev_e, mut dev_h) = (0.0, 0.0);
    for s in samples {
        for c in 0..k {
            for i in 0..3 {
                mean_e[c][i] += s.e[c][i];
                mean_h[c][i] += s.h[c][i];
                dev_e += (s.e[c][i] - classical.e[c][i]).powi(2);
                dev_h += (s.h[c][i] - classical.h[c][i]).powi(2);
            }
        }
    }
    for c in 0..k {
        for i in 0..3 {
            mean_e[c][i] /= n;
            mean_h[c][i] /= n;
        }
    }
    let (mut var_e, mut var_h) = (0.0, 0.0);
    for s in samples {
        for c in 0..k {
            for i in 0..3 {
                var_e += (s.e[c][i] - mean_e[c][i]).powi(2);
                var_h += (s.h[c][i] - mean_h[c][i]).powi(2);
            }
        }
    }
    let comps = (3 * k) as f64;
    let dof = if samples.len() > 1 { n - 1.0 } else { 1.0 };
    Ok(SampleStats {
        n: samples.len(),
        empirical_mean: FieldConfiguration { e: mean_e, h: mean_h },
        norm_sq_e: dev_e / (n * comps),
        norm_sq_h: dev_h / (n * comps),
        per_component_sd_e: (var_e / (dof * comps)).sqrt(),
        per_component_sd_h: (var_h / (dof * comps)).sqrt(),
    })
}
