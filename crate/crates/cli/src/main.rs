use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Settings};

/// Defining equations of Rees algebras of square-free monomial ideals.
///
/// Ideal files list `vars: x1 x2 ...` on the first line and one generator
/// per line as `f1: x1 x2`, `f2: ...`. Exit codes: 0 success, 2 input
/// error, 3 internal inconsistency.
#[derive(Debug, Parser)]
#[command(name = "rees-kit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify one or more ideals by their generator graph.
    Classify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Cross-check the verdict with the membership oracle.
        #[arg(long)]
        oracle: bool,
        /// Highest layer for the oracle [default: n-1, at most 6].
        #[arg(long)]
        s_max: Option<usize>,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
        /// Write the generator graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the Taylor binomials of one degree.
    Taylor {
        path: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Reduce one Taylor binomial to lower degree with a certificate chain.
    Reduce {
        path: PathBuf,
        /// Comma-separated generator indices, e.g. "1,1,4".
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        json: bool,
    },
    /// Layer-by-layer relation type estimate and minimal generators.
    Rt {
        path: PathBuf,
        /// [default: n-1, at most 6]
        #[arg(long)]
        s_max: Option<usize>,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
    },
    /// Bundled examples.
    Demo {
        name: DemoName,
        /// Number of generators for the family demo.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long)]
        json: bool,
    },
    /// Seeded random ideal in the `.ideal` format.
    Random {
        #[arg(long, value_enum, default_value = "general")]
        graph_shape: ShapeArg,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Variable budget for general ideals.
        #[arg(long, default_value_t = 8)]
        vars: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, clap::Args)]
struct CapArg {
    /// Total-degree slack for the oracle; escalates by 4 twice when the
    /// search is inconclusive.
    #[arg(long, env = "REES_KIT_CAP")]
    cap: Option<u32>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoName {
    Villarreal,
    Pentagon,
    Family,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShapeArg {
    General,
    Forest,
    OddCycle,
    EvenCycle,
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Classify {
            paths,
            oracle,
            s_max,
            cap,
            json,
            dot,
        } => commands::classify(
            &paths,
            oracle,
            &Settings::new(s_max, cap.cap, json)?,
            dot.as_deref(),
        ),
        Command::Taylor { path, degree, json } => commands::taylor(&path, degree, json),
        Command::Reduce {
            path,
            alpha,
            beta,
            json,
        } => commands::reduce(&path, &alpha, &beta, json),
        Command::Rt {
            path,
            s_max,
            cap,
            json,
        } => commands::rt(&path, &Settings::new(s_max, cap.cap, json)?),
        Command::Demo { name, n, cap, json } => {
            let name = match name {
                DemoName::Villarreal => "villarreal",
                DemoName::Pentagon => "pentagon",
                DemoName::Family => "family",
            };
            commands::demo(name, n, &Settings::new(None, cap.cap, json)?)
        }
        Command::Random {
            graph_shape,
            n,
            vars,
            seed,
        } => {
            let shape = match graph_shape {
                ShapeArg::General => rees_kit::random::Shape::General,
                ShapeArg::Forest => rees_kit::random::Shape::Forest,
                ShapeArg::OddCycle => rees_kit::random::Shape::OddCycle,
                ShapeArg::EvenCycle => rees_kit::random::Shape::EvenCycle,
            };
            commands::random(shape, n, vars, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Inconsistency { output, .. } = &e {
                print!("{output}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
