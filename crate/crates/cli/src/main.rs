use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use cellfree::{cmd_run, load_config, render_table, OutputFormat, RunSpec};
use cellfree_core::{ScenarioConfig, Strategy};
use clap::Parser;

/// Simulates user-centric AP clustering in a cell-free MIMO downlink and
/// compares clustering strategies.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Scenario file (TOML, or JSON with a .json extension); defaults apply when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Comma-separated strategies: ea, da, da-smp, bc, md, cs, gca.
    #[arg(long, value_delimiter = ',', default_value = "ea,da,da-smp,bc,md,cs,gca")]
    strategies: Vec<Strategy>,

    /// Comma-separated seeds; the config's seed when omitted.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,

    /// Comma-separated satisfaction thresholds; the config's threshold when omitted.
    #[arg(long, value_delimiter = ',')]
    kappa0: Vec<f64>,

    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = "results")]
    out: PathBuf,

    /// Records file format (csv or json); summaries are always JSON.
    #[arg(long, default_value = "csv")]
    format: OutputFormat,

    /// Print the resolved scenario as TOML and exit.
    #[arg(long)]
    print_config: bool,
}

fn run(args: Args) -> anyhow::Result<()> {
    let config = match &args.config {
        Some(path) => load_config(path).with_context(|| format!("loading {}", path.display()))?,
        None => ScenarioConfig::default(),
    };
    if args.print_config {
        print!("{}", toml::to_string(&config)?);
        return Ok(());
    }
    let mut spec = RunSpec::new(config, args.out);
    spec.strategies = args.strategies;
    spec.format = args.format;
    if !args.seeds.is_empty() {
        spec.seeds = args.seeds;
    }
    if !args.kappa0.is_empty() {
        spec.kappa0 = args.kappa0;
    }
    let results = cmd_run(&spec)?;
    print!("{}", render_table(&results));
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
