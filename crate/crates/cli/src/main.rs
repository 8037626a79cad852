use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use walkwait_cli::commands::{self, SweepArgs, SweepVar};
use walkwait_cli::{config, CliError};

/// Walk or wait for the bus: expected travel times and optimal waiting.
#[derive(Parser)]
#[command(name = "walkwait", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compare waiting for the bus against walking straight away.
    Analyze { config: PathBuf },
    /// Locate stationary waiting times and pick the best policy.
    Optimize {
        config: PathBuf,
        /// Largest waiting time considered (min). Defaults to the model's
        /// support end, or mean + 10/rate for exponential arrivals.
        #[arg(long)]
        horizon: Option<f64>,
    },
    /// Tabulate the expected travel time along one variable as CSV.
    #[command(allow_negative_numbers = true)]
    Sweep {
        config: PathBuf,
        #[arg(long, value_enum)]
        var: SweepVar,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Wait at the intermediate stop during a d1 sweep (min).
        #[arg(long)]
        t_wait: Option<f64>,
        /// Intermediate distance during a tw sweep (km).
        #[arg(long)]
        d1: Option<f64>,
    },
    /// Estimate a strategy's mean travel time by Monte Carlo.
    Simulate {
        config: PathBuf,
        /// wait_forever | walk_now | wait_then_walk:T | walk_and_wait:D1:TW[:PC]
        #[arg(long)]
        strategy: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn emit<T: Serialize + std::fmt::Display>(report: &T, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("reports serialize")
        );
    } else {
        print!("{report}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { config } => {
            let loaded = config::load(&config)?;
            emit(&commands::analyze(&loaded)?, cli.json);
        }
        Command::Optimize { config, horizon } => {
            let loaded = config::load(&config)?;
            emit(&commands::optimize(&loaded, horizon)?, cli.json);
        }
        Command::Sweep {
            config,
            var,
            from,
            to,
            steps,
            out,
            t_wait,
            d1,
        } => {
            let loaded = config::load(&config)?;
            let args = SweepArgs {
                var,
                from,
                to,
                steps,
                t_wait,
                d1,
            };
            let sweep = commands::sweep(&loaded, &args)?;
            match (out, cli.json) {
                (Some(path), json) => {
                    sweep.write_csv(&path)?;
                    if json {
                        let summary = serde_json::json!({
                            "out": path,
                            "columns": sweep.columns,
                            "rows": sweep.rows.len(),
                        });
                        println!("{summary:#}");
                    } else {
                        println!("wrote {} rows to {}", sweep.rows.len(), path.display());
                    }
                }
                (None, true) => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&sweep).expect("sweep serializes")
                    );
                }
                (None, false) => {
                    print!(
                        "{}",
                        String::from_utf8(sweep.to_csv()).expect("CSV is ASCII")
                    );
                }
            }
        }
        Command::Simulate {
            config,
            strategy,
            n,
            seed,
        } => {
            let loaded = config::load(&config)?;
            emit(&commands::simulate(&loaded, &strategy, n, seed)?, cli.json);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
