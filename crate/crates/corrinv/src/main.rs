use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use corrinv::{bounds, invert, oracle, EXIT_ERROR, EXIT_ORACLE, EXIT_WARNINGS};

#[derive(Parser)]
#[command(name = "corrinv", version, about = "Invert correlation functions into chemical and pair potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sum the H(r) and mu series and write potential.csv, mu.csv, report.json.
    Invert {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the convergence-radius bound and write bounds.json.
    Bounds {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the cluster functions with independent graph and partition sums.
    OracleCheck {
        #[arg(long)]
        config: PathBuf,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invert { config, out } => invert::run(&config, &out).map(|report| {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if report.warnings.is_empty() {
                ExitCode::SUCCESS
            } else {
                code(EXIT_WARNINGS)
            }
        }),
        Command::Bounds { config, out } => bounds::run(&config, &out).map(|r| {
            println!("radius {:e} (t* = {:e})", r.radius, r.t_star);
            ExitCode::SUCCESS
        }),
        Command::OracleCheck { config } => oracle::run(&config).map(|checks| {
            let mut ok = true;
            for c in &checks {
                let status = if c.passed() { "pass" } else { "FAIL" };
                ok &= c.passed();
                println!("{status}  {:<40} cases {:>4}  max residual {:.3e}  tol {:.0e}", c.name, c.cases, c.max_residual, c.tolerance);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                code(EXIT_ORACLE)
            }
        }),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        code(EXIT_ERROR)
    })
}
