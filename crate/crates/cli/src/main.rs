//! `mobimc`: datasets for hitting-time densities, arrival probabilities and
//! link metrics of mobile molecular communication, as CSV files with a
//! metadata sidecar.

mod commands;
mod config;
mod error;
mod output;
mod presets;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::SimOptions;
use crate::config::{Mode, RunConfig};
use crate::error::CliError;
use crate::output::{linspace, Run};
use crate::presets::Preset;

#[derive(Debug, Parser)]
#[command(name = "mobimc", version, about = "Mobile molecular communication channel experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Flat `key = value` config file (SI units).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Particles per release slot for particle simulations.
    #[arg(long, global = true)]
    particles: Option<usize>,
    /// Particle simulation step in seconds.
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Number of points of the sweep or time grid.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Analytic,
    Sim,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hitting-time densities for the release slots in `k`.
    FhtPdf,
    /// Arrival probabilities per release slot.
    Arrival,
    /// Average detection against false alarm for a common threshold.
    Roc,
    /// Error probability with optimal thresholds against MSI variance.
    Error,
    /// Slot error probability against the threshold, slot `j`.
    ThresholdSweep,
    /// Capacity per number of slots and MSI variance.
    Capacity,
    /// Particle simulation against the analytic density.
    ParticleValidate,
    /// Dataset of a published figure.
    Preset {
        #[arg(value_enum)]
        name: Preset,
    },
}

impl Command {
    fn kind(&self) -> Option<&'static str> {
        Some(match self {
            Command::FhtPdf => "fht-pdf",
            Command::Arrival => "arrival",
            Command::Roc => "roc",
            Command::Error => "error",
            Command::ThresholdSweep => "threshold-sweep",
            Command::Capacity => "capacity",
            Command::ParticleValidate => "particle-validate",
            Command::Preset { .. } => return None,
        })
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(n) = cli.particles {
        cfg.particles = n;
    }
    if let Some(dt) = cli.dt {
        cfg.dt = Some(dt);
    }
    if let Some(grid) = cli.grid {
        cfg.grid = grid;
    }
    if let Some(mode) = cli.mode {
        cfg.mode = match mode {
            ModeArg::Analytic => Mode::Analytic,
            ModeArg::Sim => Mode::Sim,
            ModeArg::Both => Mode::Both,
        };
    }
    Ok(cfg)
}

/// Runs one analysis on the config's channel and returns the metadata path.
pub(crate) fn run_kind(kind: &str, cfg: &RunConfig, out: &Path) -> Result<PathBuf, CliError> {
    let cfg = &RunConfig { kind: Some(kind.to_string()), ..cfg.clone() };
    let channel = cfg.channel()?;
    let sim = cfg.mode.sim().then(|| SimOptions::from_config(cfg));
    let stem = kind.replace('-', "_");
    let budget = if cfg.mode.sim() || kind == "particle-validate" { 600.0 } else { 60.0 };
    let mut run = Run::new(out, &stem, budget)?;
    match kind {
        "fht-pdf" => {
            if cfg.mode.analytic() {
                let table = commands::pdf_table(&channel, &cfg.releases, &commands::pdf_grid(cfg)?)?;
                run.save("fht_pdf.csv", &table)?;
            }
            if cfg.mode.sim() {
                let spec = commands::particle_spec(cfg, &channel)?;
                let (hist, _) = commands::particle_tables(&channel, &cfg.releases, &spec, cfg.grid)?;
                run.save("fht_pdf_sim.csv", &hist)?;
            }
        }
        "arrival" => {
            if cfg.delays == 0 {
                return Err(CliError::Validation("delays must be at least 1".into()));
            }
            run.save("arrival.csv", &commands::arrival_rows(&channel, cfg.k_max, cfg.delays)?)?;
        }
        "roc" => {
            let curves = [(String::new(), commands::link_params(cfg, &channel)?)];
            let gammas = linspace(cfg.gamma_min, cfg.gamma_max, cfg.grid.max(2));
            run.save("roc.csv", &commands::roc_table(&curves, &gammas, sim)?)?;
        }
        "error" => {
            let curves = [(String::new(), commands::link_params(cfg, &channel)?)];
            run.save("error.csv", &commands::error_table(&curves, &cfg.sigma2_o_grid, sim)?)?;
        }
        "threshold-sweep" => {
            let params = commands::link_params(cfg, &channel)?;
            let gammas = linspace(cfg.gamma_min, cfg.gamma_max, cfg.grid.max(2));
            run.save("threshold_sweep.csv", &commands::threshold_table(&params, cfg.slot_index(), &gammas)?)?;
        }
        "capacity" => {
            let curves = [(String::new(), commands::link_params(cfg, &channel)?)];
            run.save("capacity.csv", &commands::capacity_table(&curves, &cfg.sigma2_o_grid)?)?;
        }
        "particle-validate" => {
            let spec = commands::particle_spec(cfg, &channel)?;
            let (hist, summary) = commands::particle_tables(&channel, &cfg.releases, &spec, cfg.grid)?;
            run.save("particle_hist.csv", &hist)?;
            run.save("particle_validation.csv", &summary)?;
        }
        other => return Err(CliError::Validation(format!("unknown analysis kind {other:?}"))),
    }
    run.finish(cfg)
}

fn execute(cli: &Cli) -> Result<PathBuf, CliError> {
    let cfg = load_config(cli)?;
    match (&cli.command, cli.command.kind()) {
        (Command::Preset { name }, _) => presets::run_preset(*name, &cfg, &cli.out),
        (_, Some(kind)) => run_kind(kind, &cfg, &cli.out),
        _ => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(meta) => {
            println!("{}", meta.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mobimc: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
