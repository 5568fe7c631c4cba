//! `rabs`: energy budgets for drones that either hover or perch while serving.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rabs_core::mission::compare::ComparisonSource;

use config::{UsageError, PROFILE_DIR_ENV};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "rabs", version, about)]
struct Cli {
    /// Run configuration (JSON). Built-in defaults are used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format [default: csv for sweep, json otherwise].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Override a config value by dotted path, e.g. `airframe.mass_kg=4.4`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    /// Significant figures for CSV numbers.
    #[arg(long, global = true, default_value_t = 6,
          value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,

    /// Directory searched for profiles referenced by name.
    #[arg(long, global = true, env = PROFILE_DIR_ENV, value_name = "DIR")]
    profile_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hover power of the airframe, or forward-flight power with --speed.
    HoverPower {
        #[arg(long, value_name = "M_S")]
        speed: Option<f64>,
    },
    /// Serving time of the configured mission.
    Endurance,
    /// Hover vs. perch comparison table.
    Compare {
        #[arg(long, value_enum)]
        source: Option<Source>,
    },
    /// Serving power over a grid of platform masses.
    Sweep,
    /// Assign units to sites.
    Plan {
        /// Exact search instead of the greedy heuristic (small instances only).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Fit the airframe to measurements and print the calibrated profile.
    Calibrate,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum Source {
    Model,
    Published,
}

impl From<Source> for ComparisonSource {
    fn from(s: Source) -> Self {
        match s {
            Source::Model => ComparisonSource::Model,
            Source::Published => ComparisonSource::Published,
        }
    }
}

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn run(cli: Cli) -> Result<(), (u8, anyhow::Error)> {
    let cfg = config::load(cli.config.as_deref(), &cli.overrides, cli.profile_dir)
        .map_err(|e| (EXIT_USAGE, e))?;
    let default_format = match cli.command {
        Command::Sweep => Format::Csv,
        _ => Format::Json,
    };
    let rendered = match cli.command {
        Command::HoverPower { speed } => commands::hover_power_cmd(&cfg, speed),
        Command::Endurance => commands::endurance_cmd(&cfg),
        Command::Compare { source } => commands::compare_cmd(&cfg, source.map(Into::into)),
        Command::Sweep => commands::sweep_cmd(&cfg),
        Command::Plan { exhaustive } => commands::plan_cmd(&cfg, exhaustive),
        Command::Calibrate => commands::calibrate_cmd(&cfg),
    }
    .map_err(classify)?;
    let bytes = rendered
        .render(cli.format.unwrap_or(default_format), cli.digits.into())
        .map_err(|e| (EXIT_USAGE, e))?;
    output::emit(&bytes, cli.out.as_deref()).map_err(|e| (EXIT_FAILURE, e))
}

fn classify(e: anyhow::Error) -> (u8, anyhow::Error) {
    let code = if e.downcast_ref::<UsageError>().is_some() {
        EXIT_USAGE
    } else {
        EXIT_FAILURE
    };
    (code, e)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
