//! Lattice form of the weighted path integral for independent field modes.
//!
//! Mode `k` has amplitude `q(t)` with `q(0) = 0`; its electric readout on link
//! `j` is the slope `E_j = (q_{j+1} − q_j)/ε`. With spatial volume `V_k` the
//! time-sliced action is
//!
//! ```text
//! S_k = Σ_j V_k ε [ E_j²/2 − ω_k² q̄_j²/2 + f_k q̄_j ],   q̄_j = (q_j + q_{j+1})/2
//! ```
//!
//! and the weight functional for a readout `α` of resolution `Δ` over the
//! four-volume `Ω` is `exp(−Σ_j (V_k ε / Ω) (E_j − α_j)² / Δ²)`.
//!
//! The amplitude `U(α) = ∫ dq exp(iS − W)` is a Gaussian integral evaluated in
//! closed form. `|U(α)|²` is again Gaussian in `α`; its mean and covariance are
//! read off a joint banded system over `(q, q', α)`, where `q'` carries the
//! conjugate amplitude.

use num_complex::Complex64;
use rayon::prelude::*;

use super::linalg::{BandLu, SymTridiag, TridiagLdl};
use super::modes::LatticeSpec;
use crate::error::{positive, Error, Result};
use crate::rpi::Region;

const I: Complex64 = Complex64::new(0.0, 1.0);
/// Relative pivot below which the weight is considered not to damp a direction.
const FLATNESS_TOLERANCE: f64 = 1e-13;

/// Width and normalization of the Gaussian weight functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSpec {
    pub delta: f64,
    pub four_volume: f64,
}

impl WeightSpec {
    pub fn new(delta: f64, four_volume: f64) -> Result<Self> {
        Ok(Self {
            delta: positive("delta", delta)?,
            four_volume: positive("four_volume", four_volume)?,
        })
    }
}

/// One field mode on the time lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBlock {
    pub frequency: f64,
    pub spatial_volume: f64,
    /// `K` in `S = ½ qᵀKq + sᵀq`.
    pub stiffness: SymTridiag<f64>,
    /// `s` in `S = ½ qᵀKq + sᵀq`.
    pub source: Vec<f64>,
}

impl ModeBlock {
    fn dof(&self) -> usize {
        self.source.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianModel {
    pub step: f64,
    pub four_volume: f64,
    pub blocks: Vec<ModeBlock>,
}

/// Gaussian law of the readouts, `P(α) = |U(α)|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputDistribution {
    /// Readout means, mode by mode and link by link.
    pub mean: Vec<f64>,
    /// Per-mode covariance blocks, row-major `n × n`; modes are uncorrelated.
    pub covariance: Vec<Vec<f64>>,
    pub block_dim: usize,
    /// Variance of the four-volume average of the readout.
    pub average_variance: f64,
    /// Always true: `|U|²` of a Gaussian integral is Gaussian in the readout.
    pub is_gaussian: bool,
}

impl OutputDistribution {
    /// Output uncertainty `δ = 2 sqrt(Var ā)`.
    pub fn uncertainty(&self) -> f64 {
        2.0 * self.average_variance.sqrt()
    }

    pub fn covariance_entry(&self, mode: usize, i: usize, j: usize) -> f64 {
        self.covariance[mode][i * self.block_dim + j]
    }
}

/// Builds the lattice of the lowest `mode_count` box shells and its Gaussian model.
///
/// `classical_source` holds one constant driving force per mode.
pub fn build_mode_model(
    region: &Region,
    mode_count: usize,
    time_steps: usize,
    classical_source: Option<&[f64]>,
) -> Result<(LatticeSpec, GaussianModel)> {
    let spec = LatticeSpec::box_modes(region, mode_count, time_steps)?;
    let model = GaussianModel::from_lattice(&spec, classical_source)?;
    Ok((spec, model))
}

impl GaussianModel {
    pub fn from_lattice(spec: &LatticeSpec, classical_source: Option<&[f64]>) -> Result<Self> {
        if let Some(src) = classical_source {
            if src.len() != spec.mode_count() {
                return Err(Error::Lattice(format!(
                    "classical source has {} entries for {} modes",
                    src.len(),
                    spec.mode_count()
                )));
            }
            if src.iter().any(|f| !f.is_finite()) {
                return Err(Error::Lattice("non-finite classical source".into()));
            }
        }
        let n = spec.dof_per_mode();
        let eps = spec.step();
        let blocks = spec
            .mode_frequencies
            .iter()
            .zip(&spec.mode_volume_weights)
            .enumerate()
            .map(|(k, (&w, &share))| {
                let volume = share / spec.duration;
                let cell = volume * eps;
                let on = cell * (1.0 / (eps * eps) - w * w / 4.0);
                let off = cell * (-1.0 / (eps * eps) - w * w / 4.0);
                let mut stiffness = SymTridiag::zeros(n);
                // link 0 joins the fixed node to free node 0
                stiffness.diag[0] += on;
                for j in 1..n {
                    stiffness.diag[j - 1] += on;
                    stiffness.diag[j] += on;
                    stiffness.off[j - 1] += off;
                }
                let force = classical_source.map_or(0.0, |s| s[k]);
                let mut source = vec![cell * force; n];
                source[n - 1] *= 0.5;
                ModeBlock {
                    frequency: w,
                    spatial_volume: volume,
                    stiffness,
                    source,
                }
            })
            .collect();
        Ok(Self {
            step: eps,
            four_volume: spec.four_volume,
            blocks,
        })
    }

    pub fn dof_per_mode(&self) -> usize {
        self.blocks.first().map_or(0, ModeBlock::dof)
    }

    pub fn readout_len(&self) -> usize {
        self.blocks.len() * self.dof_per_mode()
    }

    /// `E_j = (q_{j+1} − q_j)/ε` for one mode, with `q_0 = 0`.
    pub fn readout(&self, q: &[f64]) -> Vec<f64> {
        let eps = self.step;
        (0..q.len())
            .map(|j| (q[j] - if j == 0 { 0.0 } else { q[j - 1] }) / eps)
            .collect()
    }

    fn readout_transpose(&self, a: &[Complex64]) -> Vec<Complex64> {
        let n = a.len();
        let eps = self.step;
        (0..n)
            .map(|i| (a[i] - if i + 1 < n { a[i + 1] } else { Complex64::default() }) / eps)
            .collect()
    }

    /// Per-link weight coefficient `V_k ε / (Ω Δ²)`.
    fn link_weight(&self, block: &ModeBlock, weight: &WeightSpec) -> f64 {
        block.spatial_volume * self.step / (weight.four_volume * weight.delta * weight.delta)
    }

    /// Four-volume share of one readout link, `V_k ε / Ω`.
    fn link_share(&self, block: &ModeBlock) -> f64 {
        block.spatial_volume * self.step / self.four_volume
    }

    /// Real part `2 RᵀGR` of the exponent matrix, i.e. the damping supplied by the weight.
    fn damping(&self, block: &ModeBlock, weight: &WeightSpec) -> SymTridiag<f64> {
        let n = block.dof();
        let g = self.link_weight(block, weight) / (self.step * self.step);
        let mut m = SymTridiag::zeros(n);
        for i in 0..n {
            m.diag[i] = 2.0 * g * if i + 1 < n { 2.0 } else { 1.0 };
        }
        for o in m.off.iter_mut() {
            *o = -2.0 * g;
        }
        m
    }

    /// Fails when the weight leaves a direction of some mode undamped.
    pub fn check_convergence(&self, weight: &WeightSpec) -> Result<()> {
        for (k, block) in self.blocks.iter().enumerate() {
            let d = self.damping(block, weight);
            let pivot = d.min_relative_pivot();
            if !(pivot > FLATNESS_TOLERANCE) {
                return Err(Error::NonConvergent {
                    mode: k,
                    frequency: block.frequency,
                });
            }
        }
        Ok(())
    }

    /// Exponent matrices `A_k = 2RᵀGR − iK` of `exp(−½ qᵀAq + bᵀq)`, one per mode.
    pub fn quadratic_form(&self, weight: &WeightSpec) -> Result<Vec<SymTridiag<Complex64>>> {
        self.check_convergence(weight)?;
        Ok(self.blocks.iter().map(|b| self.exponent(b, weight)).collect())
    }

    fn exponent(&self, block: &ModeBlock, weight: &WeightSpec) -> SymTridiag<Complex64> {
        let d = self.damping(block, weight);
        let k = &block.stiffness;
        SymTridiag {
            diag: d.diag.iter().zip(&k.diag).map(|(&r, &s)| Complex64::new(r, -s)).collect(),
            off: d.off.iter().zip(&k.off).map(|(&r, &s)| Complex64::new(r, -s)).collect(),
        }
    }

    /// `ln[(2π)^{n/2} det(A)^{-1/2}]` summed over modes.
    pub fn log_normalization(&self, weight: &WeightSpec) -> Result<Complex64> {
        let forms = self.quadratic_form(weight)?;
        let mut total = Complex64::default();
        for a in &forms {
            let f = TridiagLdl::factor(a, "exponent matrix")?;
            total += 0.5 * a.len() as f64 * (2.0 * std::f64::consts::PI).ln() - 0.5 * f.log_det();
        }
        Ok(total)
    }

    /// Readout of the stationary path `K q = −s`, mode by mode.
    pub fn classical_readout(&self) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.readout_len());
        for block in &self.blocks {
            if block.source.iter().all(|&s| s == 0.0) {
                out.extend(std::iter::repeat_n(0.0, block.dof()));
                continue;
            }
            let rhs: Vec<f64> = block.source.iter().map(|s| -s).collect();
            let q = block.stiffness.solve(&rhs)?;
            out.extend(self.readout(&q));
        }
        Ok(out)
    }

    /// Banded `(q, q', α)` system whose `α` block of the inverse is the readout covariance.
    fn joint_system(&self, block: &ModeBlock, weight: &WeightSpec) -> Result<JointSystem> {
        let n = block.dof();
        let a = self.exponent(block, weight);
        let g = self.link_weight(block, weight);
        let r = 1.0 / self.step;
        let mut band = BandLu::zeros(3 * n, 5, 5);
        let q = |i: usize| 3 * i;
        let qc = |i: usize| 3 * i + 1;
        let al = |j: usize| 3 * j + 2;
        for i in 0..n {
            band.add(q(i), q(i), a.diag[i]);
            band.add(qc(i), qc(i), a.diag[i].conj());
            if i + 1 < n {
                for (x, y) in [(i, i + 1), (i + 1, i)] {
                    band.add(q(x), q(y), a.off[i]);
                    band.add(qc(x), qc(y), a.off[i].conj());
                }
            }
            band.add(al(i), al(i), Complex64::new(4.0 * g, 0.0));
            // link i reads free nodes i (coefficient 1/ε) and i−1 (−1/ε)
            let mut couple = |node: usize, coef: f64| {
                let v = Complex64::new(-2.0 * g * coef, 0.0);
                for z in [q(node), qc(node)] {
                    band.add(z, al(i), v);
                    band.add(al(i), z, v);
                }
            };
            couple(i, r);
            if i > 0 {
                couple(i - 1, -r);
            }
        }
        let scale: Vec<f64> = (0..3 * n).map(|z| 1.0 / band.get(z, z).norm().sqrt()).collect();
        let mut scaled = BandLu::zeros(3 * n, 5, 5);
        for i in 0..3 * n {
            for j in i.saturating_sub(5)..(i + 6).min(3 * n) {
                let v = band.get(i, j);
                if v != Complex64::default() {
                    scaled.add(i, j, v * scale[i] * scale[j]);
                }
            }
        }
        scaled.factor("joint readout system")?;
        Ok(JointSystem { lu: scaled, scale })
    }

    /// `δ² = 4 Var(ā)` for the four-volume-averaged readout `ā`.
    pub fn average_uncertainty_sq(&self, weight: &WeightSpec) -> Result<f64> {
        self.check_convergence(weight)?;
        let mut var = 0.0;
        for block in &self.blocks {
            let n = block.dof();
            let sys = self.joint_system(block, weight)?;
            let share = self.link_share(block);
            let mut rhs = vec![Complex64::default(); 3 * n];
            for j in 0..n {
                rhs[3 * j + 2] = Complex64::new(share, 0.0);
            }
            let x = sys.solve(&rhs);
            var += (0..n).map(|j| share * x[3 * j + 2].re).sum::<f64>();
        }
        check_variance(var)?;
        Ok(4.0 * var)
    }
}

fn check_variance(var: f64) -> Result<()> {
    if var.is_finite() && var > 0.0 {
        Ok(())
    } else {
        Err(Error::IllConditioned {
            what: "readout covariance",
            ratio: f64::INFINITY,
            limit: super::linalg::CONDITION_LIMIT,
        })
    }
}

struct JointSystem {
    lu: BandLu,
    scale: Vec<f64>,
}

impl JointSystem {
    fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let scaled: Vec<Complex64> = rhs.iter().zip(&self.scale).map(|(b, s)| b * s).collect();
        self.lu
            .solve(&scaled)
            .into_iter()
            .zip(&self.scale)
            .map(|(x, s)| x * s)
            .collect()
    }
}

/// Natural log of `U(α) = ∫ dq exp(iS(q) − W(q, α))`, modes concatenated in `readout`.
pub fn log_restricted_amplitude(
    model: &GaussianModel,
    weight: &WeightSpec,
    readout: &[f64],
) -> Result<Complex64> {
    if readout.len() != model.readout_len() {
        return Err(Error::Lattice(format!(
            "readout has {} values, model expects {}",
            readout.len(),
            model.readout_len()
        )));
    }
    let forms = model.quadratic_form(weight)?;
    let n = model.dof_per_mode();
    let mut total = Complex64::default();
    for ((block, a), alpha) in model.blocks.iter().zip(&forms).zip(readout.chunks(n)) {
        let f = TridiagLdl::factor(a, "exponent matrix")?;
        let g = model.link_weight(block, weight);
        let alpha_c: Vec<Complex64> = alpha.iter().map(|&x| Complex64::new(2.0 * g * x, 0.0)).collect();
        let pulled = model.readout_transpose(&alpha_c);
        let b: Vec<Complex64> = pulled
            .iter()
            .zip(&block.source)
            .map(|(p, &s)| p + I * s)
            .collect();
        let x = f.solve(&b);
        let quad: Complex64 = b.iter().zip(&x).map(|(u, v)| u * v).sum();
        let alpha_sq: f64 = alpha.iter().map(|x| x * x).sum();
        total += 0.5 * n as f64 * (2.0 * std::f64::consts::PI).ln() - 0.5 * f.log_det() + 0.5 * quad
            - g * alpha_sq;
    }
    Ok(total)
}

/// `U(α)`; see [`log_restricted_amplitude`].
pub fn restricted_amplitude(
    model: &GaussianModel,
    weight: &WeightSpec,
    readout: &[f64],
) -> Result<Complex64> {
    log_restricted_amplitude(model, weight, readout).map(Complex64::exp)
}

/// Mean and covariance of the readout distribution `|U(α)|²`.
pub fn output_distribution(model: &GaussianModel, weight: &WeightSpec) -> Result<OutputDistribution> {
    model.check_convergence(weight)?;
    let n = model.dof_per_mode();
    let per_mode: Vec<(Vec<f64>, Vec<f64>, f64)> = model
        .blocks
        .par_iter()
        .map(|block| {
            let sys = model.joint_system(block, weight)?;
            let mut h = vec![Complex64::default(); 3 * n];
            for i in 0..n {
                h[3 * i] = I * block.source[i];
                h[3 * i + 1] = -I * block.source[i];
            }
            let x = sys.solve(&h);
            let mean: Vec<f64> = (0..n).map(|j| x[3 * j + 2].re).collect();

            let mut cov = vec![0.0; n * n];
            let mut e = vec![Complex64::default(); 3 * n];
            for c in 0..n {
                e[3 * c + 2] = Complex64::new(1.0, 0.0);
                let col = sys.solve(&e);
                e[3 * c + 2] = Complex64::default();
                for r in 0..n {
                    cov[r * n + c] = col[3 * r + 2].re;
                }
            }
            for r in 0..n {
                for c in r + 1..n {
                    let s = 0.5 * (cov[r * n + c] + cov[c * n + r]);
                    cov[r * n + c] = s;
                    cov[c * n + r] = s;
                }
            }
            let share = model.link_share(block);
            let var = share * share * cov.iter().sum::<f64>();
            Ok((mean, cov, var))
        })
        .collect::<Result<_>>()?;

    let mut mean = Vec::with_capacity(model.readout_len());
    let mut covariance = Vec::with_capacity(per_mode.len());
    let mut average_variance = 0.0;
    for (m, c, v) in per_mode {
        mean.extend(m);
        covariance.push(c);
        average_variance += v;
    }
    check_variance(average_variance)?;
    Ok(OutputDistribution {
        mean,
        covariance,
        block_dim: n,
        average_variance,
        is_gaussian: true,
    })
}

/// `(Δ, δ²)` pairs for each resolution in `deltas`, evaluated in parallel.
pub fn variance_sweep(model: &GaussianModel, deltas: &[f64]) -> Result<Vec<(f64, f64)>> {
    deltas
        .par_iter()
        .map(|&d| {
            let w = WeightSpec::new(d, model.four_volume)?;
            Ok((d, model.average_uncertainty_sq(&w)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::modes::LatticeSpec;

    fn single(omega: f64, nt: usize, l: f64, tau: f64) -> GaussianModel {
        let region = Region::new(l, tau).unwrap();
        let spec = LatticeSpec::single_mode(&region, omega, nt).unwrap();
        GaussianModel::from_lattice(&spec, None).unwrap()
    }

    #[test]
    fn free_mode_is_tridiagonal_free_particle() {
        let m = single(0.0, 8, 1.0, 1.0);
        assert_eq!(m.dof_per_mode(), 7);
        let k = &m.blocks[0].stiffness;
        let eps = 1.0 / 7.0;
        // V = 1, cell = ε: diagonal 2/ε inside, 1/ε at the free end
        assert!((k.diag[0] - 2.0 / eps).abs() < 1e-12);
        assert!((k.diag[6] - 1.0 / eps).abs() < 1e-12);
        assert!((k.off[3] + 1.0 / eps).abs() < 1e-12);
    }

    #[test]
    fn zero_mode_follows_exact_law() {
        // q(0) fixed makes the ω = 0 action diagonal in the link readouts
        let m = single(0.0, 32, 1.0, 1.0);
        for delta in [0.1, 1.0, 3.0] {
            let w = WeightSpec::new(delta, 1.0).unwrap();
            let v = m.average_uncertainty_sq(&w).unwrap();
            let exact = delta * delta + 4.0 / (delta * delta);
            assert!(((v - exact) / exact).abs() < 1e-10, "{v} vs {exact}");
        }
    }

    #[test]
    fn full_and_fast_paths_agree() {
        let region = Region::new(1.0, 0.3).unwrap();
        let (_, m) = build_mode_model(&region, 3, 12, None).unwrap();
        let w = WeightSpec::new(0.7, region.four_volume()).unwrap();
        let d = output_distribution(&m, &w).unwrap();
        let fast = m.average_uncertainty_sq(&w).unwrap();
        assert!(((4.0 * d.average_variance - fast) / fast).abs() < 1e-10);
        assert!(d.mean.iter().all(|x| x.abs() < 1e-12));
        assert!(d.covariance_entry(1, 2, 2) > 0.0);
    }

    #[test]
    fn mean_is_classical_solution() {
        let region = Region::new(1.0, 0.5).unwrap();
        let src = [0.8, -1.5];
        let (_, m) = build_mode_model(&region, 2, 16, Some(&src)).unwrap();
        let w = WeightSpec::new(0.4, region.four_volume()).unwrap();
        let d = output_distribution(&m, &w).unwrap();
        let cl = m.classical_readout().unwrap();
        for (a, b) in d.mean.iter().zip(&cl) {
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1e-3), "{a} vs {b}");
        }
    }

    #[test]
    fn huge_delta_leaves_flat_direction() {
        let m = single(0.0, 6, 1.0, 1.0);
        let w = WeightSpec::new(1e200, 1.0).unwrap();
        assert!(matches!(
            m.check_convergence(&w),
            Err(Error::NonConvergent { mode: 0, .. })
        ));
        assert!(restricted_amplitude(&m, &w, &[0.0; 5]).is_err());
    }

    #[test]
    fn amplitude_peaks_at_classical_readout() {
        let region = Region::new(1.0, 1.0).unwrap();
        let spec = LatticeSpec::single_mode(&region, 1.3, 6).unwrap();
        let m = GaussianModel::from_lattice(&spec, Some(&[2.0])).unwrap();
        let w = WeightSpec::new(0.9, 1.0).unwrap();
        let center = m.classical_readout().unwrap();
        let peak = log_restricted_amplitude(&m, &w, &center).unwrap().re;
        for k in 0..center.len() {
            for s in [-0.2, 0.2] {
                let mut a = center.clone();
                a[k] += s;
                assert!(log_restricted_amplitude(&m, &w, &a).unwrap().re < peak);
            }
        }
    }

    #[test]
    fn readout_length_checked() {
        let m = single(0.0, 4, 1.0, 1.0);
        let w = WeightSpec::new(1.0, 1.0).unwrap();
        assert!(matches!(
            restricted_amplitude(&m, &w, &[0.0; 2]),
            Err(Error::Lattice(_))
        ));
    }
}
