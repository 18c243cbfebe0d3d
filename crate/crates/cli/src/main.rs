use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weakval_cli::{output, run, Format, RunConfig, Scenario};

#[derive(Parser)]
#[command(name = "weakval", version, about = "Weak-measurement simulator batch runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its tables.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario to run (positional form).
    #[arg(value_enum, conflicts_with = "scenario")]
    name: Option<Scenario>,
    #[arg(long, value_enum)]
    scenario: Option<Scenario>,
    /// Pointer offset x0.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    x0: f64,
    /// Pointer width.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    sigma: f64,
    /// Coupling g*t; must not exceed sigma/10.
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    kappa: f64,
    /// Hilbert-space dimension of random instances.
    #[arg(long, default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Number of z planes for the two-slit trajectories.
    #[arg(long, default_value_t = 41)]
    planes: usize,
    /// Number of trajectory start points.
    #[arg(long, default_value_t = 80)]
    starts: usize,
    /// Pointer bins of the binned POVM.
    #[arg(long, default_value_t = 4)]
    bins: usize,
}

fn main() -> ExitCode {
    let Command::Run(args) = Cli::parse().command;
    let Some(scenario) = args.name.or(args.scenario) else {
        eprintln!("error: a scenario is required (hardy, twoslit, identities, povm, sweep)");
        return ExitCode::from(2);
    };
    let cfg = RunConfig {
        x0: args.x0,
        sigma: args.sigma,
        kappa: args.kappa,
        dim: args.dim,
        trials: args.trials,
        seed: args.seed,
        out: args.out,
        format: args.format,
        planes: args.planes,
        starts: args.starts,
        bins: args.bins,
        ..RunConfig::new(scenario)
    };
    let result = run(&cfg).and_then(|report| {
        let paths = output::write_report(&cfg, &report)?;
        Ok((report, paths))
    });
    match result {
        Ok((report, paths)) => {
            print!("{}", report.summary_text());
            for p in paths {
                println!("wrote {}", p.display());
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
