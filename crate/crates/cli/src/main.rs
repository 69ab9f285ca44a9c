use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use paintwave_cli::run_config::{Overrides, RunConfig};
use paintwave_cli::{commands, CliError};

#[derive(Parser, Debug)]
#[command(name = "paintwave", version, about = "Sub-THz links between transceivers buried in paint")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides `out` in the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Boresight grid step in degrees; must divide 360.
    #[arg(long, global = true)]
    step: Option<f64>,

    /// Transmitter boresight, degrees.
    #[arg(long = "beta-t", global = true, allow_hyphen_values = true)]
    beta_t: Option<f64>,

    /// Receiver boresight, degrees.
    #[arg(long = "beta-r", global = true, allow_hyphen_values = true)]
    beta_r: Option<f64>,

    /// Gain pattern CSV (`angle_deg,gain_dbi`) used at both ends.
    #[arg(long, global = true)]
    pattern: Option<PathBuf>,

    /// Worker threads for sweeps.
    #[arg(long, global = true, env = "PAINTWAVE_THREADS")]
    threads: Option<usize>,

    /// Length unit of the synthesis report: um, mm or m.
    #[arg(long, global = true)]
    units: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Synthesize the in-paint patch antenna dimensions.
    Synth,
    /// Evaluate the five-path link budget at one orientation.
    Link,
    /// Sweep both boresights over the full circle.
    SweepBoresight,
    /// Sweep the burial depth at fixed boresights.
    SweepDepth,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = cli.config.ok_or_else(|| {
        CliError::Config(paintwave_core::Error::validation("--config", "is required"))
    })?;
    let overrides = Overrides {
        out: cli.out.clone(),
        step: cli.step,
        beta_t: cli.beta_t,
        beta_r: cli.beta_r,
        pattern: cli.pattern,
        units: cli.units,
    };
    let cfg = RunConfig::load(&config, &overrides)?;
    let write = cli.out.is_some();
    match cli.command {
        Command::Synth => println!("{}", commands::synth(&cfg, write)?),
        Command::Link => println!("{}", commands::link(&cfg, write)?),
        Command::SweepBoresight => {
            for path in commands::sweep_boresight(&cfg, cli.threads)? {
                println!("{}", path.display());
            }
        }
        Command::SweepDepth => println!("{}", commands::sweep_depth(&cfg)?.display()),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
