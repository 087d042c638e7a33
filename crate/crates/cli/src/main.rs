use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use srr_cli::experiment::{self, FreeMode, Options};
use srr_cli::instance::Instance;

#[derive(Parser)]
#[command(name = "srr", version, about = "LP bounds, rounding policies and oracles for online allocation problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the instance's LP and print the optimum and solution.
    Solve(Common),
    /// Simulate the rounding policy and print the report.
    Simulate(Common),
    /// Simulate and check marginals and performance bounds; exits 1 on failure.
    Verify(Common),
    /// Compare LP bounds, the oracle optimum and the simulated policy.
    Gap(Common),
    /// Exact optimum from the brute-force oracle.
    Oracle(Common),
}

#[derive(Args)]
struct Common {
    /// Instance file: JSON tagged by `kind`, or an edge list for graph probing.
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add the online-policy constraints to the matching LP.
    #[arg(long)]
    tighten: bool,
    /// Separate subset constraints in the graph probing LP.
    #[arg(long)]
    subset_cuts: bool,
    /// Free table for knapsack: `exact` or `sampled:<R>`.
    #[arg(long, default_value = "exact")]
    free: FreeMode,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            reps: self.reps,
            seed: self.seed,
            tighten: self.tighten,
            subset_cuts: self.subset_cuts,
            free: self.free,
        }
    }

    fn emit(&self, table: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, table).with_context(|| format!("cannot write {}", path.display())),
            None => {
                print!("{table}");
                Ok(())
            }
        }
    }
}

/// Returns whether every requested check passed.
fn run(cli: Cli) -> Result<bool> {
    let (Command::Solve(c) | Command::Simulate(c) | Command::Verify(c) | Command::Gap(c) | Command::Oracle(c)) = &cli.command;
    let inst = Instance::load(&c.instance)?;
    let opts = c.options();
    if let Command::Oracle(_) = cli.command {
        let oracle = experiment::oracle(&inst)?;
        c.emit(&experiment::oracle_table(&inst, oracle.as_ref())?)?;
        return Ok(true);
    }
    let prep = experiment::prepare(&inst, &opts)?;
    for d in &prep.diagnostics {
        eprintln!("warning: {d}");
    }
    match cli.command {
        Command::Solve(_) => c.emit(&experiment::solve_table(&inst, &prep))?,
        Command::Simulate(_) => c.emit(&experiment::simulate(&prep, &opts)?.to_csv())?,
        Command::Verify(_) => {
            let report = experiment::simulate(&prep, &opts)?;
            let (table, ok) = experiment::verify_table(&prep, &report)?;
            c.emit(&table)?;
            return Ok(ok);
        }
        Command::Gap(_) => {
            let report = experiment::simulate(&prep, &opts)?;
            let oracle = match experiment::oracle(&inst) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("warning: oracle skipped: {e:#}");
                    None
                }
            };
            c.emit(&experiment::gap_table(&inst, &prep, &report, oracle.as_ref()))?;
        }
        Command::Oracle(_) => unreachable!(),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
