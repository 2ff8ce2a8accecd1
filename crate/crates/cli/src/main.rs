use std::process::ExitCode;

use adapted_cli::{load, run_command, Command, Mode, Options};
use anyhow::{Context, Result};
use clap::Parser;

/// Exact adapted-pair and slice computations for algebraic Lie algebras.
#[derive(Debug, Parser)]
#[command(name = "adapted", version)]
struct Cli {
    /// validate | index | invariants | verify-pair | search-pairs |
    /// equivalence | section-check | stratify | report-all
    command: Command,
    /// Catalog name (e.g. filiform5, heisenberg_ext?c=2) or descriptor file.
    algebra: String,
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random sample points added to the grid.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Maximum number of supports examined by search-pairs.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    #[arg(long = "V", allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    eta2: Option<String>,
}

fn run(cli: Cli) -> Result<()> {
    let desc = load(&cli.algebra)?;
    let opts = Options {
        degree_bound: cli.degree_bound,
        seed: cli.seed,
        samples: cli.samples,
        budget: cli.budget,
        mode: cli.mode,
        h: cli.h,
        eta: cli.eta,
        v: cli.v,
        h2: cli.h2,
        eta2: cli.eta2,
    };
    let report = run_command(cli.command, &desc, &opts).with_context(|| format!("{} on {}", cli.command, cli.algebra))?;
    for line in &report.summary {
        eprintln!("{line}");
    }
    for u in &report.unverified {
        eprintln!("UNVERIFIED: {u}");
    }
    let text = report.to_json();
    match cli.out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {path}"))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
