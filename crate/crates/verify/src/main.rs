use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sta_verify::{catalog, configure_threads, load, prepare, run, write_report, ConfigError, Overrides};

/// Verification harness for the spacetime algebra toolkit.
#[derive(Parser)]
#[command(name = "verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the suites of a scenario file or built-in scenario.
    Run {
        /// Path to a scenario JSON file, or the name of a built-in scenario.
        config: String,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Grid points per axis.
        #[arg(long)]
        grid: Option<usize>,
        /// Seed for the randomized checks.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for `<scenario>.report.json`.
        #[arg(long, default_value = ".")]
        report_dir: PathBuf,
    },
    /// Print the suite catalog.
    ListSuites,
}

fn config_error(e: ConfigError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(Command::Run { config, suites, grid, seed, report_dir }) = cli.command else {
        print!("{}", catalog());
        return ExitCode::SUCCESS;
    };
    if let Err(e) = configure_threads() {
        return config_error(e);
    }
    let resolved = match load(&config).and_then(|s| prepare(s, &Overrides { suites, grid, seed })) {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };
    let outcome = run(&resolved);
    print!("{}", outcome.report.human());
    for (suite, t) in &outcome.timings {
        println!("time {suite}: {:.3} s", t.as_secs_f64());
    }
    match write_report(&outcome.report, &report_dir) {
        Ok(path) => println!("report: {}", path.display()),
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(1);
        }
    }
    if outcome.report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
