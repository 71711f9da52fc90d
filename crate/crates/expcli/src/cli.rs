use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{ExperimentConfig, ExperimentId};
use crate::error::{ExpError, Result};
use crate::experiments::run_experiment;
use crate::table::write_table;

/// Exit code for configuration and validation failures. Usage errors exit
/// with 2 (clap's convention).
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "qdcool", version, about = "Digital cooling experiments", long_about = None)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trotterized vs continuous cooling and reheating against coupling time
    TrotterCurves(RunArgs),
    /// Cooling and reheating against fridge-system detuning
    DetuningCurves(RunArgs),
    /// Coupling alternation over random field directions of a single qubit
    SphereScan(RunArgs),
    /// Energy change of one step against the fridge energy (Ising chain)
    EnergySweep(RunArgs),
    /// BangBang trajectories on Ising chains
    BangbangTfim(RunArgs),
    /// LogSweep on a single qubit with unknown gap
    #[command(name = "logsweep-1p1")]
    Logsweep1p1(RunArgs),
    /// LogSweep fidelity against K and N on Ising chains
    LogsweepTfim(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TOML configuration; defaults are used when omitted
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory (default: `out` from the config, else `results`)
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads for the sweep (default: all cores)
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
    /// Validate the configuration and exit
    #[arg(long)]
    pub check: bool,
}

impl Command {
    pub fn split(&self) -> (ExperimentId, &RunArgs) {
        match self {
            Command::TrotterCurves(a) => (ExperimentId::TrotterCurves, a),
            Command::DetuningCurves(a) => (ExperimentId::DetuningCurves, a),
            Command::SphereScan(a) => (ExperimentId::SphereScan, a),
            Command::EnergySweep(a) => (ExperimentId::EnergySweep, a),
            Command::BangbangTfim(a) => (ExperimentId::BangbangTfim, a),
            Command::Logsweep1p1(a) => (ExperimentId::Logsweep1p1, a),
            Command::LogsweepTfim(a) => (ExperimentId::LogsweepTfim, a),
        }
    }
}

/// Parses `args` (program name first), runs the experiment and returns the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILURE
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let (id, args) = cli.command.split();
    let cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    cfg.validate(id)?;
    if args.check {
        println!("{id}: configuration ok");
        return Ok(());
    }
    if args.threads == Some(0) {
        return Err(ExpError::config("--threads", "must be >= 1"));
    }

    let out = args
        .out
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("results"));
    std::fs::create_dir_all(&out).map_err(|e| ExpError::io(&out, e))?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        pool = pool.num_threads(n);
    }
    let tables = pool.build()?.install(|| run_experiment(id, &cfg))?;
    for table in &tables {
        let (csv, _) = write_table(&out, id.name(), table, cfg.echo(id))?;
        println!("{} rows -> {}", table.len(), csv.display());
    }
    Ok(())
}
