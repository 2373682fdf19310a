//! `rpi-meter` command line.
//!
//! Values come from explicit flags first, then the `--config` file, then the
//! documented defaults. Exit codes: 0 success, 1 usage or parse error,
//! 2 physical-constraint violation, 3 numerical failure.

pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::backreaction::MeasurementPlan;
use crate::engine::{build_mode_model, fit_variance_law, log_sweep, variance_sweep};
use crate::error::{positive, Error};
use crate::probe::ProbeBody;
use crate::rpi::{minimal_uncertainty, output_uncertainty_with, Region, Resolution};
use crate::sampler::{cell_spread, empirical_stats, sample_outputs, FieldConfiguration};
use crate::units::{field_to_natural, AlphaMode, Quantity, UnitKind, UnitSystem};

pub use config::{load_config, ConfigFile};
pub use emit::{emit, emit_footer, emit_table, format_number, limit_row, Format, Record, Value, MAP_HEADER};

pub const THREADS_ENV: &str = "RPI_METER_THREADS";
const MAX_SAMPLE_VALUES: u64 = 50_000_000;
const MAX_GRID: u64 = 2000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Physics(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Physics(e) => match e {
                Error::NonPositive { .. } | Error::Constraint(_) | Error::DegenerateFrequencies { .. } => 2,
                Error::NonConvergent { .. } | Error::IllConditioned { .. } => 3,
                Error::Lattice(_) | Error::DegenerateSweep(_) | Error::Empty(_) => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Physics(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Physics(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "rpi-meter", version, about = "Quantum limits on electromagnetic field measurability")]
struct Cli {
    /// Unit system for inputs and outputs: natural (ħ = c = 1, lengths in cm) or cgs [default: natural]
    #[arg(long, global = true)]
    units: Option<String>,
    /// Fine-structure constant: `paper` (exactly 1/137) or `codata` [default: paper]
    #[arg(long, global = true)]
    alpha: Option<String>,
    /// Flat key=value file; keys are flag names without dashes
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// text or csv [default: text]
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Output uncertainty and regime for a resolution
    #[command(allow_negative_numbers = true)]
    Regime(RegimeArgs),
    /// Error budget of a charged mechanical probe
    #[command(allow_negative_numbers = true)]
    Probe(ProbeArgs),
    /// Absolute limit of field measurability for one region
    #[command(allow_negative_numbers = true)]
    Limit(LimitArgs),
    /// Absolute limit over a logarithmic (l, tau) grid, as CSV
    #[command(allow_negative_numbers = true)]
    Map(MapArgs),
    /// Resolution sweep of the lattice path integral and fit of the variance law
    #[command(allow_negative_numbers = true)]
    Engine(EngineArgs),
    /// Monte Carlo measurement outputs around a zero classical field
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
struct RegimeArgs {
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Resolution of the E channel
    #[arg(long = "dE")]
    d_e: Option<f64>,
    /// Resolution of the H channel [default: dE]
    #[arg(long = "dH")]
    d_h: Option<f64>,
    /// Ratio to the optimal resolution separating the regimes [default: 10]
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Debug, Args)]
struct ProbeArgs {
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Characteristic frequency of the measured motion
    #[arg(long = "Omega")]
    motion_frequency: Option<f64>,
    /// Eigenfrequency of the probe oscillator [default: 0]
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long = "Q")]
    q: Option<f64>,
    /// Position error; defaults to the optimal value
    #[arg(long)]
    dx: Option<f64>,
}

#[derive(Debug, Args)]
struct LimitArgs {
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Position error; may only lower the default
    #[arg(long)]
    dx: Option<f64>,
    /// Drop the q ≥ e constraint
    #[arg(long)]
    no_quantization: bool,
}

#[derive(Debug, Args)]
struct MapArgs {
    #[arg(long)]
    l_min: Option<f64>,
    #[arg(long)]
    l_max: Option<f64>,
    #[arg(long)]
    tau_min: Option<f64>,
    #[arg(long)]
    tau_max: Option<f64>,
    /// Points per axis [default: 50]
    #[arg(long)]
    grid: Option<u64>,
}

#[derive(Debug, Args)]
struct EngineArgs {
    /// Number of box shells [default: 16]
    #[arg(long)]
    modes: Option<u64>,
    /// Time nodes N_t [default: 64]
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    /// Decades of resolution around the optimum [default: 4]
    #[arg(long)]
    sweep: Option<f64>,
    /// Sweep points [default: 17]
    #[arg(long)]
    points: Option<u64>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    l: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long = "dE")]
    d_e: Option<f64>,
    /// [default: dE]
    #[arg(long = "dH")]
    d_h: Option<f64>,
    /// Number of samples [default: 1000]
    #[arg(long)]
    n: Option<u64>,
    /// [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Coarse cells K [default: 1]
    #[arg(long)]
    cells: Option<u64>,
    /// Print only the statistics footer
    #[arg(long)]
    stats_only: bool,
}

/// Fully resolved and validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub units: UnitKind,
    pub alpha: AlphaMode,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub command: Command,
}

impl RunConfig {
    pub fn system(&self) -> UnitSystem {
        crate::units::constants(self.units, self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Regime { l: f64, tau: f64, d_e: f64, d_h: f64, threshold: f64 },
    Probe { m: f64, tau: f64, motion_frequency: f64, omega: f64, q: f64, dx: Option<f64> },
    Limit { l: f64, tau: f64, dx: Option<f64>, quantization: bool },
    Map { l_min: f64, l_max: f64, tau_min: f64, tau_max: f64, grid: usize },
    Engine { modes: usize, steps: usize, l: f64, tau: f64, sweep: f64, points: usize },
    Sample { l: f64, tau: f64, d_e: f64, d_h: f64, n: usize, seed: u64, cells: usize, stats_only: bool },
}

struct Merge<'a> {
    cfg: &'a ConfigFile,
}

impl Merge<'_> {
    fn real(&self, flag: Option<f64>, key: &'static str) -> Option<f64> {
        flag.or_else(|| self.cfg.real(key))
    }

    fn required(&self, flag: Option<f64>, key: &'static str) -> Result<f64, CliError> {
        self.real(flag, key)
            .ok_or_else(|| CliError::Usage(format!("missing required --{key}")))
    }

    fn physical(&self, flag: Option<f64>, key: &'static str) -> Result<f64, CliError> {
        Ok(positive(key, self.required(flag, key)?)?)
    }

    fn count(&self, flag: Option<u64>, key: &'static str, default: u64) -> u64 {
        flag.or_else(|| self.cfg.count(key)).unwrap_or(default)
    }

    fn switch(&self, flag: bool, key: &'static str) -> bool {
        flag || self.cfg.flag(key).unwrap_or(false)
    }

    fn word<T: std::str::FromStr<Err = String>>(
        &self,
        flag: Option<String>,
        key: &'static str,
        default: T,
    ) -> Result<T, CliError> {
        match flag.or_else(|| self.cfg.get(key).map(str::to_owned)) {
            Some(s) => s.parse().map_err(|e: String| CliError::Usage(format!("--{key}: {e}"))),
            None => Ok(default),
        }
    }
}

fn to_usize(v: u64, key: &str) -> Result<usize, CliError> {
    usize::try_from(v).map_err(|_| CliError::Usage(format!("--{key} too large")))
}

/// Parses and validates a command line (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    resolve(cli)
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let cfg = match &cli.config {
        Some(p) => load_config(p)?,
        None => ConfigFile::default(),
    };
    let m = Merge { cfg: &cfg };
    let units = m.word(cli.units, "units", UnitKind::Natural)?;
    let alpha = m.word(cli.alpha, "alpha", AlphaMode::PaperExact)?;
    let format = m.word(cli.format, "format", Format::Text)?;
    let out = cli.out.or_else(|| cfg.get("out").map(PathBuf::from));

    let command = match cli.command {
        Sub::Regime(a) => {
            let d_e = m.physical(a.d_e, "dE")?;
            let d_h = match m.real(a.d_h, "dH") {
                Some(v) => positive("dH", v)?,
                None => d_e,
            };
            let threshold = m.real(a.threshold, "threshold").unwrap_or(crate::rpi::DEFAULT_REGIME_THRESHOLD);
            if !(threshold.is_finite() && threshold > 1.0) {
                return Err(Error::Constraint(format!("threshold must exceed 1, got {threshold}")).into());
            }
            Command::Regime {
                l: m.physical(a.l, "l")?,
                tau: m.physical(a.tau, "tau")?,
                d_e,
                d_h,
                threshold,
            }
        }
        Sub::Probe(a) => {
            let omega = m.real(a.omega, "omega").unwrap_or(0.0);
            if !(omega.is_finite() && omega >= 0.0) {
                return Err(Error::NonPositive { name: "omega", value: omega }.into());
            }
            let dx = match m.real(a.dx, "dx") {
                Some(v) => Some(positive("dx", v)?),
                None => None,
            };
            Command::Probe {
                m: m.physical(a.m, "m")?,
                tau: m.physical(a.tau, "tau")?,
                motion_frequency: m.physical(a.motion_frequency, "Omega")?,
                omega,
                q: m.physical(a.q, "Q")?,
                dx,
            }
        }
        Sub::Limit(a) => Command::Limit {
            l: m.physical(a.l, "l")?,
            tau: m.physical(a.tau, "tau")?,
            dx: match m.real(a.dx, "dx") {
                Some(v) => Some(positive("dx", v)?),
                None => None,
            },
            quantization: !m.switch(a.no_quantization, "no-quantization"),
        },
        Sub::Map(a) => {
            let l_min = m.physical(a.l_min, "l-min")?;
            let l_max = m.physical(a.l_max, "l-max")?;
            let tau_min = m.physical(a.tau_min, "tau-min")?;
            let tau_max = m.physical(a.tau_max, "tau-max")?;
            if l_min > l_max || tau_min > tau_max {
                return Err(Error::Constraint("grid minimum exceeds maximum".into()).into());
            }
            let grid = m.count(a.grid, "grid", 50);
            if grid > MAX_GRID {
                return Err(CliError::Usage(format!("--grid {grid} exceeds {MAX_GRID}")));
            }
            Command::Map {
                l_min,
                l_max,
                tau_min,
                tau_max,
                grid: to_usize(grid, "grid")?,
            }
        }
        Sub::Engine(a) => {
            let sweep = m.real(a.sweep, "sweep").unwrap_or(4.0);
            if !(sweep.is_finite() && sweep > 0.0) {
                return Err(CliError::Usage(format!("--sweep must be positive, got {sweep}")));
            }
            Command::Engine {
                modes: to_usize(m.count(a.modes, "modes", 16), "modes")?,
                steps: to_usize(m.count(a.steps, "steps", 64), "steps")?,
                l: m.physical(a.l, "l")?,
                tau: m.physical(a.tau, "tau")?,
                sweep,
                points: to_usize(m.count(a.points, "points", 17), "points")?,
            }
        }
        Sub::Sample(a) => {
            let d_e = m.physical(a.d_e, "dE")?;
            let d_h = match m.real(a.d_h, "dH") {
                Some(v) => positive("dH", v)?,
                None => d_e,
            };
            let n = m.count(a.n, "n", 1000);
            let cells = m.count(a.cells, "cells", 1);
            if n == 0 || cells == 0 {
                return Err(CliError::Usage("--n and --cells must be at least 1".into()));
            }
            if n.saturating_mul(cells) > MAX_SAMPLE_VALUES {
                return Err(CliError::Usage(format!(
                    "n × cells exceeds {MAX_SAMPLE_VALUES}"
                )));
            }
            Command::Sample {
                l: m.physical(a.l, "l")?,
                tau: m.physical(a.tau, "tau")?,
                d_e,
                d_h,
                n: to_usize(n, "n")?,
                seed: m.count(a.seed, "seed", 0),
                cells: to_usize(cells, "cells")?,
                stats_only: m.switch(a.stats_only, "stats-only"),
            }
        }
    };
    Ok(RunConfig {
        units,
        alpha,
        format,
        out,
        command,
    })
}

/// `n` values spaced logarithmically from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![min],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    max
                } else {
                    min * (max / min).powf(i as f64 / (n - 1) as f64)
                }
            })
            .collect(),
    }
}

/// Runs a validated configuration and returns the rendered output.
pub fn execute(cfg: &RunConfig) -> Result<String, CliError> {
    let sys = cfg.system();
    let head: Record = vec![
        ("units", sys.kind.to_string().into()),
        ("alpha", sys.alpha_mode.to_string().into()),
    ];
    match cfg.command {
        Command::Regime { l, tau, d_e, d_h, threshold } => {
            let region = Region::from_units(l, tau, &sys)?;
            let res = Resolution::new(field_to_natural(d_e, &sys), field_to_natural(d_h, &sys))?;
            let rep = output_uncertainty_with(&region, &res, threshold);
            let field = |x: f64| Value::from(sys.from_natural(x, Quantity::Field));
            let mut r = head;
            r.extend([
                ("l", l.into()),
                ("tau", tau.into()),
                ("four_volume", sys.from_natural(region.four_volume(), Quantity::FourVolume).into()),
                ("delta_E", d_e.into()),
                ("delta_H", d_h.into()),
                ("delta_E_out", field(rep.delta_e_out)),
                ("delta_H_out", field(rep.delta_h_out)),
                ("regime_E", rep.regime.to_string().into()),
                ("regime_H", rep.regime_h.to_string().into()),
                ("delta_opt", field(rep.delta_opt)),
                ("delta_min", minimal_uncertainty(&region, &sys).into()),
            ]);
            Ok(emit(&r, cfg.format))
        }
        Command::Probe { m, tau, motion_frequency, omega, q, dx } => {
            let mut body = ProbeBody::new(q, m, omega, motion_frequency)?;
            if let Some(dx) = dx {
                body = body.with_delta_x(dx)?;
            }
            let rep = body.budget(tau, &sys)?;
            let mut r = head;
            r.extend([
                ("m", m.into()),
                ("tau", tau.into()),
                ("Omega", motion_frequency.into()),
                ("omega", omega.into()),
                ("Q", q.into()),
                ("delta_x", rep.delta_x.into()),
                ("delta_F", rep.delta_f.into()),
                ("delta_E_mech", rep.delta_e_mech.into()),
            ]);
            Ok(emit(&r, cfg.format))
        }
        Command::Limit { l, tau, dx, quantization } => {
            let mut plan = MeasurementPlan::new(l, tau, sys)?;
            if let Some(dx) = dx {
                plan = plan.with_delta_x(dx)?;
            }
            if !quantization {
                plan = plan.without_charge_quantization();
            }
            let b = plan.evaluate()?;
            match cfg.format {
                Format::Csv => Ok(emit_table(&MAP_HEADER, &[limit_row(l, tau, &b)])),
                Format::Text => {
                    let mut r = head;
                    r.extend([
                        ("l", l.into()),
                        ("tau", tau.into()),
                        ("regime", b.regime.to_string().into()),
                        ("rho", b.rho.into()),
                        ("delta_E_abs", b.delta_e_abs.into()),
                        ("Q_opt", b.q_opt.into()),
                        ("delta_x", b.delta_x_used.into()),
                        ("E_meas", b.e_meas.into()),
                        ("lambda", b.lambda.into()),
                        ("subregions", b.subregion_count.into()),
                        ("charge_clamped", b.charge_clamped.into()),
                    ]);
                    Ok(emit(&r, Format::Text))
                }
            }
        }
        Command::Map { l_min, l_max, tau_min, tau_max, grid } => {
            let ls = log_grid(l_min, l_max, grid);
            let taus = log_grid(tau_min, tau_max, grid);
            let points: Vec<(f64, f64)> = ls
                .iter()
                .flat_map(|&l| taus.iter().map(move |&t| (l, t)))
                .collect();
            let rows = points
                .par_iter()
                .map(|&(l, t)| {
                    let b = MeasurementPlan::new(l, t, sys)?.evaluate()?;
                    Ok(limit_row(l, t, &b))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(emit_table(&MAP_HEADER, &rows))
        }
        Command::Engine { modes, steps, l, tau, sweep, points } => {
            let region = Region::from_units(l, tau, &sys)?;
            let omega = region.four_volume();
            let (_, model) = build_mode_model(&region, modes, steps, None)?;
            let opt = (2.0 / omega).sqrt();
            let data = variance_sweep(&model, &log_sweep(opt, sweep, points))?;
            let fit = fit_variance_law(&data, omega)?;
            let field = |x: f64| sys.from_natural(x, Quantity::Field);
            let rows: Vec<Vec<Value>> = data
                .iter()
                .map(|&(d, v)| {
                    let s = field(1.0);
                    vec![field(d).into(), (v * s * s).into(), fit.c.into(), fit.quantum_exponent.into()]
                })
                .collect();
            let (d_hi, v_hi) = data[data.len() - 1];
            let mut out = emit_table(&["delta", "variance", "fit_C", "fit_p"], &rows);
            let mut r = head;
            r.extend([
                ("modes", modes.into()),
                ("steps", steps.into()),
                ("four_volume", sys.from_natural(omega, Quantity::FourVolume).into()),
                ("delta_opt", field(opt).into()),
                ("fit_C", fit.c.into()),
                ("fit_p", fit.quantum_exponent.into()),
                ("fit_residual", fit.residual.into()),
                ("points_used", fit.points_used.into()),
                ("plateau", (v_hi / (d_hi * d_hi)).into()),
                ("C_relative_to_4", (fit.c / 4.0 - 1.0).into()),
            ]);
            out.push_str(&emit_footer(&r));
            Ok(out)
        }
        Command::Sample { l, tau, d_e, d_h, n, seed, cells, stats_only } => {
            let region = Region::from_units(l, tau, &sys)?;
            let res = Resolution::new(field_to_natural(d_e, &sys), field_to_natural(d_h, &sys))?;
            let classical = FieldConfiguration::zeros(cells)?;
            let samples = sample_outputs(&classical, &region, &res, n, seed)?;
            let stats = empirical_stats(&samples, &classical)?;
            let spread = cell_spread(&region, &res, cells);
            let s = sys.from_natural(1.0, Quantity::Field);
            let mut out = String::new();
            if !stats_only {
                let header = ["sample", "cell", "Ex", "Ey", "Ez", "Hx", "Hy", "Hz"];
                let mut rows = Vec::with_capacity(n * cells);
                for (i, cfg) in samples.iter().enumerate() {
                    for (c, (e, h)) in cfg.e.iter().zip(&cfg.h).enumerate() {
                        let mut row: Vec<Value> = vec![i.into(), c.into()];
                        row.extend(e.iter().chain(h).map(|x| Value::from(x * s)));
                        rows.push(row);
                    }
                }
                out = emit_table(&header, &rows);
            }
            let mut r = head;
            r.extend([
                ("n", stats.n.into()),
                ("cells", cells.into()),
                ("seed", seed.into()),
                ("delta_E_out", (spread.delta_e * s).into()),
                ("delta_H_out", (spread.delta_h * s).into()),
                ("sigma_E", (spread.sigma_e * s).into()),
                ("sigma_H", (spread.sigma_h * s).into()),
                ("norm_sq_E", (stats.norm_sq_e * s * s).into()),
                ("norm_sq_H", (stats.norm_sq_h * s * s).into()),
                ("vector_norm_sq_E", (stats.vector_norm_sq_e() * s * s).into()),
                ("vector_norm_sq_H", (stats.vector_norm_sq_h() * s * s).into()),
                ("per_component_sd_E", (stats.per_component_sd_e * s).into()),
                ("per_component_sd_H", (stats.per_component_sd_h * s).into()),
            ]);
            out.push_str(&emit_footer(&r));
            Ok(out)
        }
    }
}

fn worker_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

fn execute_with_pool(cfg: &RunConfig) -> Result<String, CliError> {
    match worker_count()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?
            .install(|| execute(cfg)),
        None => execute(cfg),
    }
}

/// Full command-line run; returns the process exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let result = resolve(cli).and_then(|cfg| {
        let text = execute_with_pool(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
            None => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &str) -> Result<RunConfig, CliError> {
        parse_args(std::iter::once("rpi-meter").chain(args.split_whitespace()))
    }

    #[test]
    fn limit_defaults() {
        let c = parse("limit --l 1 --tau 1").unwrap();
        assert_eq!(c.units, UnitKind::Natural);
        assert_eq!(c.alpha, AlphaMode::PaperExact);
        assert_eq!(
            c.command,
            Command::Limit { l: 1.0, tau: 1.0, dx: None, quantization: true }
        );
    }

    #[test]
    fn negative_length_is_a_constraint_error() {
        let e = parse("limit --l -1 --tau 1").unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains('l'));
    }

    #[test]
    fn missing_and_unknown_flags() {
        let e = parse("limit --l 1").unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("--tau"));
        assert_eq!(parse("limit --l 1 --tau 1 --bogus 2").unwrap_err().exit_code(), 1);
        assert_eq!(parse("limit --l x --tau 1").unwrap_err().exit_code(), 1);
        assert_eq!(parse("limit --l 1 --tau 1 --units imperial").unwrap_err().exit_code(), 1);
    }

    #[test]
    fn delta_min_line() {
        let c = parse("regime --l 1 --tau 1 --dE 1").unwrap();
        let out = execute(&c).unwrap();
        assert!(out.lines().any(|l| l == "delta_min=2.00000000"), "{out}");
        assert!(out.lines().any(|l| l == "regime_E=borderline"));
    }

    #[test]
    fn grid_endpoints() {
        let g = log_grid(1e-3, 1e3, 7);
        assert_eq!(g[0], 1e-3);
        assert_eq!(g[6], 1e3);
        assert!((g[3] - 1.0).abs() < 1e-12);
        assert!(log_grid(1.0, 2.0, 0).is_empty());
    }

    #[test]
    fn exit_codes_by_error_kind() {
        let c = |e: Error| CliError::Physics(e).exit_code();
        assert_eq!(c(Error::Constraint("x".into())), 2);
        assert_eq!(
            c(Error::IllConditioned { what: "x", ratio: 1.0, limit: 1.0 }),
            3
        );
        assert_eq!(c(Error::NonConvergent { mode: 0, frequency: 0.0 }), 3);
        assert_eq!(c(Error::DegenerateSweep("x".into())), 1);
    }
}
