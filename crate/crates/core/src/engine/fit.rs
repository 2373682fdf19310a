//! Power-law fit of the output-variance sweep.

use crate::error::{positive, Error, Result};

/// Minimum number of sweep points.
pub const MIN_POINTS: usize = 8;
/// Minimum span of the sweep in decades of `Δ`.
pub const MIN_DECADES: f64 = 4.0;
/// Points whose excess `δ² − Δ²` is below this fraction of `δ²` are dropped:
/// the subtraction has lost too many digits there.
const EXCESS_FLOOR: f64 = 1e-6;

/// Result of fitting `δ² − Δ² = C / (Ω² Δ^p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceFit {
    pub c: f64,
    pub quantum_exponent: f64,
    /// Root-mean-square residual of the log-space fit.
    pub residual: f64,
    pub points_used: usize,
}

pub fn fit_variance_law(sweep: &[(f64, f64)], four_volume: f64) -> Result<VarianceFit> {
    positive("four_volume", four_volume)?;
    if sweep.len() < MIN_POINTS {
        return Err(Error::DegenerateSweep(format!(
            "{} points, need at least {MIN_POINTS}",
            sweep.len()
        )));
    }
    let (lo, hi) = sweep
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &(d, _)| (lo.min(d), hi.max(d)));
    if !(lo > 0.0) || (hi / lo).log10() < MIN_DECADES {
        return Err(Error::DegenerateSweep(format!(
            "resolutions span {lo:e}..{hi:e}, need {MIN_DECADES} decades"
        )));
    }

    let pts: Vec<(f64, f64)> = sweep
        .iter()
        .filter(|(d, v)| v.is_finite() && (v - d * d) > EXCESS_FLOOR * v)
        .map(|&(d, v)| (d.ln(), (v - d * d).ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::DegenerateSweep("fewer than two points with a resolvable excess".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateSweep("all usable points share one resolution".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(VarianceFit {
        c: four_volume * four_volume * intercept.exp(),
        quantum_exponent: -slope,
        residual,
        points_used: pts.len(),
    })
}

/// `count` resolutions spaced logarithmically over `decades` decades centred on `center`.
pub fn log_sweep(center: f64, decades: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![center];
    }
    (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64 - 0.5;
            center * 10f64.powf(decades * t)
        })
        .collect()
}
