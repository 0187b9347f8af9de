use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kuramoto_heol::presets::PRESET_NAMES;
use kuramoto_heol::Error;
use kuramoto_heol_cli::commands::{
    run_command, scenario_command, validate_command, EXIT_OK, EXIT_VALIDATION,
};
use kuramoto_heol_cli::{CliError, Overrides, Source};

/// Flatness-based synchronization of Kuramoto oscillators with HEOL feedback.
#[derive(Parser)]
#[command(author, version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a closed-loop simulation and write trace.csv, metrics.txt and SVG figures.
    Run(RunArgs),
    /// Check the reference plan for singular denominators and non-positive rates.
    Validate(ValidateArgs),
    /// Print a preset as an editable scenario file.
    Scenario {
        /// Preset name.
        name: String,
    },
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Built-in experiment (paper-multiplicative, paper-additive).
    #[arg(long)]
    preset: Option<String>,
    /// Scenario file (TOML).
    #[arg(long)]
    scenario: Option<PathBuf>,
}

impl SourceArgs {
    fn source(&self) -> Source {
        match (&self.preset, &self.scenario) {
            (Some(name), _) => Source::Preset(name.clone()),
            (None, Some(path)) => Source::Scenario(path.clone()),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Output directory (defaults to the scenario's [output] dir, then ./results).
    #[arg(long)]
    out: Option<PathBuf>,
    /// RNG seed for the measurement noise.
    #[arg(long)]
    seed: Option<u64>,
    /// Disable measurement noise.
    #[arg(long)]
    no_noise: bool,
    /// Apply the flat feedforward only (no HEOL correction).
    #[arg(long)]
    open_loop: bool,
    /// Run even if the reference plan has violations.
    #[arg(long)]
    force: bool,
    /// Use identity uncertainties (true plant equals the nominal model).
    #[arg(long)]
    nominal: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    source: SourceArgs,
}

fn report(err: &CliError) -> ExitCode {
    eprintln!("error: {err}");
    if let CliError::Simulation(Error::Refused { report }) = err {
        eprint!("{report}");
    }
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            let overrides = Overrides {
                seed: args.seed,
                no_noise: args.no_noise,
                open_loop: args.open_loop,
                force: args.force,
                nominal: args.nominal,
            };
            match run_command(&args.source.source(), args.out.as_deref(), &overrides) {
                Ok(outcome) => {
                    print!("{}", outcome.metrics);
                    println!("wrote {}", outcome.out_dir.display());
                    ExitCode::from(EXIT_OK)
                }
                Err(e) => report(&e),
            }
        }
        Command::Validate(args) => {
            match validate_command(&args.source.source(), &Overrides::default()) {
                Ok((text, ok)) => {
                    print!("{text}");
                    ExitCode::from(if ok { EXIT_OK } else { EXIT_VALIDATION })
                }
                Err(e) => report(&e),
            }
        }
        Command::Scenario { name } => match scenario_command(&name) {
            Ok(text) => {
                print!("{text}");
                ExitCode::from(EXIT_OK)
            }
            Err(e) => report(&e),
        },
        Command::Presets => {
            for name in PRESET_NAMES {
                println!("{name}");
            }
            ExitCode::from(EXIT_OK)
        }
    }
}
