use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use rts_tdma::analytic::AnalyticReport;
use rts_tdma::harness::{self, ExperimentConfig, SweepKind};
use rts_tdma::sic::decode_trace;

#[derive(Parser)]
#[command(
    name = "rts-tdma",
    version,
    about = "RTS-TDMA vs. coded slotted ALOHA simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// `key = value` config file; missing keys use the reference setup
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed, overrides the config
    #[arg(long)]
    seed: Option<u64>,
    /// Frames per sweep point, overrides the config
    #[arg(long)]
    frames: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// CSV destination; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Throughput versus the maximum number of vehicles
    SweepMmax(SweepArgs),
    /// Throughput versus frame duration
    SweepTframe(SweepArgs),
    /// Closed-form frame budget and crossover points
    Analytic(Common),
    /// Step-by-step SIC on an instance file
    Trace { instance: PathBuf },
}

fn load(common: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => harness::load_config(path)
            .with_context(|| format!("reading config {}", path.display()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(frames) = common.frames {
        cfg.frames = frames;
    }
    Ok(cfg)
}

fn sweep(args: &SweepArgs, kind: SweepKind) -> Result<()> {
    let cfg = load(&args.common)?;
    let spec = cfg.sweep_spec(kind)?;
    let report = match kind {
        SweepKind::MMax => harness::sweep_mmax(&spec)?,
        SweepKind::TFrame => harness::sweep_tframe(&spec)?,
    };
    match &args.out {
        Some(path) => harness::write_csv(&report, path)
            .with_context(|| format!("writing {}", path.display()))?,
        None => harness::write_csv_to(&report, io::stdout().lock())?,
    }
    Ok(())
}

fn trace(path: &Path) -> Result<()> {
    let cap = harness::load_instance(path)
        .with_context(|| format!("reading instance {}", path.display()))?;
    print!("{}", decode_trace(&cap));
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::SweepMmax(args) => sweep(&args, SweepKind::MMax),
        Command::SweepTframe(args) => sweep(&args, SweepKind::TFrame),
        Command::Analytic(common) => {
            let cfg = load(&common)?;
            print!("{}", AnalyticReport::new(cfg.timing(cfg.m_max)?)?);
            Ok(())
        }
        Command::Trace { instance } => trace(&instance),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
