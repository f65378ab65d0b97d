//! memkick: simulate, validate, benchmark, and plot discrete accelerator
//! maps with power-law memory.
//!
//! Exit codes: 0 ok, 1 validation failure, 2 usage/config error,
//! 3 divergence, 4 I/O failure.

mod config;
mod csvio;
mod plot;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use memkick_core::{fastsum, Error, DEFAULT_MAX_HORIZON};

const EXIT_VALIDATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_DIVERGENCE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "memkick", version, about = "Discrete accelerator maps with power-law memory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a config file and write the trajectory CSV.
    Simulate {
        /// Path to a flat key = value config file.
        config: PathBuf,
    },
    /// Run the cross-module validation suites.
    Validate {
        #[arg(value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
    /// Benchmark the memory-sum strategies; emits CSV rows.
    Bench {
        alpha: f64,
        n_max: usize,
        #[arg(default_value_t = 1)]
        trials: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a trajectory CSV as a standalone SVG line chart.
    Plot {
        csv: PathBuf,
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn max_horizon() -> Result<usize, String> {
    match std::env::var("MEMKICK_MAX_HORIZON") {
        Ok(v) => v
            .parse::<usize>()
            .map_err(|_| format!("MEMKICK_MAX_HORIZON: not a positive integer: {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_HORIZON),
    }
}

fn cmd_simulate(config_path: &PathBuf) -> u8 {
    let cap = match max_horizon() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let cfg = match config::load(config_path, cap) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let traj = match memkick_core::run_scenario(&cfg.scenario) {
        Ok(traj) => traj,
        Err(Error::Divergence { period, channel, value, bound }) => {
            eprintln!("divergence at period {period}: |{channel}| = {value:e} exceeds bound {bound:e}");
            return EXIT_DIVERGENCE;
        }
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let csv = csvio::to_csv(&traj);
    if let Err(e) = std::fs::write(&cfg.out, csv) {
        eprintln!("cannot write {}: {e}", cfg.out.display());
        return EXIT_IO;
    }
    0
}

fn cmd_validate(level: LevelArg) -> u8 {
    let level = match level {
        LevelArg::Quick => validate::Level::Quick,
        LevelArg::Full => validate::Level::Full,
    };
    let failed = validate::run(level);
    if failed.is_empty() {
        println!("all checks passed");
        0
    } else {
        println!("{} check(s) failed:", failed.len());
        for name in failed {
            println!("  {name}");
        }
        EXIT_VALIDATION
    }
}

fn cmd_bench(alpha: f64, n_max: usize, trials: usize, out: Option<&PathBuf>) -> u8 {
    let rows = match fastsum::bench_strategies(alpha, n_max, trials) {
        Ok(rows) => rows,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_CONFIG;
        }
    };
    let mut report = String::from(fastsum::BenchRow::CSV_HEADER);
    report.push('\n');
    for row in rows {
        report.push_str(&row.to_csv());
        report.push('\n');
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, report) {
                eprintln!("cannot write {}: {e}", path.display());
                return EXIT_IO;
            }
        }
        None => print!("{report}"),
    }
    0
}

fn cmd_plot(csv_path: &PathBuf, out: &PathBuf) -> u8 {
    let text = match std::fs::read_to_string(csv_path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("cannot read {}: {e}", csv_path.display());
            return EXIT_CONFIG;
        }
    };
    let table = match csvio::parse_csv(&text) {
        Ok(table) => table,
        Err(e) => {
            eprintln!("malformed CSV {}: {e}", csv_path.display());
            return EXIT_CONFIG;
        }
    };
    let svg = plot::render(&table);
    if let Err(e) = std::fs::write(out, svg) {
        eprintln!("cannot write {}: {e}", out.display());
        return EXIT_IO;
    }
    0
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Simulate { config } => cmd_simulate(config),
        Command::Validate { level } => cmd_validate(*level),
        Command::Bench { alpha, n_max, trials, out } => cmd_bench(*alpha, *n_max, *trials, out.as_ref()),
        Command::Plot { csv, out } => cmd_plot(csv, out),
    };
    ExitCode::from(code)
}
