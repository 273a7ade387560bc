//! Command-line front end: every analysis is a subcommand writing data files
//! plus a manifest into the output directory.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use belyi_lab::runner::{self, Command as RunCommand, ExperimentConfig, OutputFormat};

#[derive(Parser)]
#[command(
    name = "belyi-lab",
    version,
    about = "Random Belyi surfaces: permutational sampling, exact character-theoretic mixing laws, and Poisson-Dirichlet face statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,

    /// Master seed; every trial derives its own stream from (seed, index)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads (output is identical for any value)
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Output directory (overrides the BELYI_LAB_OUT_DIR environment variable)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format for optional summaries
    #[arg(long, global = true, default_value = "csv")]
    format: String,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Sample face spectra of random oriented k-regular graphs
    Simulate(SimulateArgs),
    /// Exact convolution law, total variation, and the character-ratio bound
    Mixing(MixingArgs),
    /// Character-table dumps and reference-table verification
    Character(CharacterArgs),
    /// Compare ranked face masses against Poisson-Dirichlet samples
    PdCompare(PdCompareArgs),
    /// Adjacency spectra and the limiting-density histogram check
    Spectrum(SpectrumArgs),
    /// Partition/dimension bound sweeps
    Bounds(BoundsArgs),
    /// Run the full verification suite (exit 4 on any failure)
    Verify,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    trials: u64,
    /// Also write per-trial edge lists under graphs/
    #[arg(long)]
    export_graphs: bool,
}

#[derive(Args)]
struct MixingArgs {
    /// Degree N of the symmetric group (N ≤ 36, k | N, 2 | N)
    #[arg(long = "N", visible_alias = "degree")]
    degree: u32,
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Also sample an empirical law with this many trials
    #[arg(long)]
    mc_trials: Option<u64>,
}

#[derive(Args)]
struct CharacterArgs {
    #[arg(long = "N", visible_alias = "degree")]
    degree: u32,
    /// Verify the six reference shapes' dimensions and character magnitudes
    #[arg(long)]
    table1: bool,
    /// Dump the full character table as CSV (N ≤ 12)
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct PdCompareArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long)]
    trials: u64,
    /// Bin count for the limiting-density L1 check
    #[arg(long)]
    bins: Option<usize>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Verify p(r) against its exponential bound for r up to this limit
    #[arg(long)]
    partition_bound: Option<u32>,
    /// Rim-hook count bound sweep: requires --fl-k
    #[arg(long, requires = "fl_k")]
    fl_n: Option<u32>,
    #[arg(long, requires = "fl_n")]
    fl_k: Option<u32>,
    /// Dimension lower-bound sweep over all partitions of N
    #[arg(long)]
    lower_bounds: Option<u32>,
    /// Inverse-dimension sum: requires --sum-m and --sum-t
    #[arg(long, requires_all = ["sum_m", "sum_t"])]
    sum_n: Option<u32>,
    #[arg(long)]
    sum_m: Option<u32>,
    #[arg(long)]
    sum_t: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match &cli.command {
        CliCommand::Simulate(a) => RunCommand::Simulate {
            n: a.n,
            k: a.k,
            trials: a.trials,
            export_graphs: a.export_graphs,
        },
        CliCommand::Mixing(a) => RunCommand::Mixing {
            degree: a.degree,
            k: a.k,
            mc_trials: a.mc_trials,
        },
        CliCommand::Character(a) => RunCommand::Character {
            degree: a.degree,
            table1: a.table1,
            dump: a.dump,
        },
        CliCommand::PdCompare(a) => RunCommand::PdCompare {
            n: a.n,
            k: a.k,
            trials: a.trials,
            theta: a.theta,
        },
        CliCommand::Spectrum(a) => RunCommand::Spectrum {
            n: a.n,
            k: a.k,
            trials: a.trials,
            bins: a.bins,
        },
        CliCommand::Bounds(a) => RunCommand::Bounds {
            partition_bound_r: a.partition_bound,
            fomin_lulov: a.fl_n.zip(a.fl_k),
            lower_bounds_n: a.lower_bounds,
            prop42: match (a.sum_n, a.sum_m, a.sum_t) {
                (Some(n), Some(m), Some(t)) => Some((n, m, t)),
                _ => None,
            },
        },
        CliCommand::Verify => RunCommand::Verify,
    };
    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os(runner::OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let format = match cli.format.as_str() {
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => {
            eprintln!("error: unknown format `{other}` (expected csv|json)");
            return ExitCode::from(2);
        }
    };
    let config = ExperimentConfig {
        command,
        master_seed: cli.seed,
        workers: cli.workers,
        out_dir,
        format,
    };
    match runner::run(&config) {
        Ok(manifest) => {
            if let Some(criteria) = &manifest.criteria {
                for c in criteria {
                    println!("{}", c.line());
                }
                if !manifest.all_criteria_passed() {
                    eprintln!("verification failed");
                    return ExitCode::from(4);
                }
            }
            println!(
                "ok: wrote {} file(s) to {} in {} ms",
                manifest.data_files.len(),
                config.out_dir.display(),
                manifest.wall_time_ms
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
