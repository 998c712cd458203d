use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hadamard_dse::commands::{self, resolve_out_dir};
use hadamard_dse::{CliError, Parallel, RunConfig};

/// Analog vs. digital Hadamard transform: SNR sweeps and design-space
/// exploration.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo output-SNR sweeps, one CSV per configured chain.
    SweepSnr(RunArgs),
    /// ADC selection and efficiency exploration with Pareto extraction.
    Dse {
        #[command(flatten)]
        run: RunArgs,
        /// Charge only the transform's own area.
        #[arg(long)]
        exclude_adc_area: bool,
    },
    /// Recompute the built-in preset tables and report deviations.
    ValidateTables {
        /// Also write array_presets.csv here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration or a manifest from an earlier run.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides master_seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(seed) = self.seed {
            cfg.master_seed = seed;
        }
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::SweepSnr(args) => {
            let cfg = args.load()?;
            let out = resolve_out_dir(args.out.as_deref(), &cfg);
            let m = commands::sweep_snr(&cfg, &out, &Parallel)?;
            println!("wrote {} file(s) to {}", m.outputs.len(), out.display());
        }
        Command::Dse { run, exclude_adc_area } => {
            let mut cfg = run.load()?;
            cfg.dse.exclude_adc_area |= exclude_adc_area;
            let out = resolve_out_dir(run.out.as_deref(), &cfg);
            let m = commands::dse(&cfg, &out, &Parallel)?;
            for note in &m.notes {
                println!("{note}");
            }
            println!("wrote {} file(s) to {}", m.outputs.len(), out.display());
        }
        Command::ValidateTables { out } => commands::validate_tables(&mut io::stdout().lock(), out.as_deref())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
