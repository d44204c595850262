//! `mdd` — build and analyze matroid decision diagrams from JSON
//! descriptions. See the `spec` module for the description format.
//!
//! Exit codes: 0 success; 2 input error; 3 size-limit refusal; 4 a checked
//! relation or bound failed (the report is still printed).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use matroid_dd::build::TargetFamily;
use matroid_dd::DdKind;

mod commands;
mod error;
mod spec;

use commands::{CmdOut, OrderMode, OutFormat};
use error::{CliError, EXIT_THEOREM};

#[derive(Parser)]
#[command(
    name = "mdd",
    version,
    about = "Build and analyze matroid decision diagrams",
    long_about = "Represents a matroid's independent sets or bases as a reduced binary \
                  decision diagram (BDD) or zero-suppressed decision diagram (ZDD), and \
                  checks the size and width laws relating the diagrams to the matroid's \
                  structure. Matroids are described by small JSON files; set MATROID_DD_MAX_N \
                  to change the ground-size limit."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Bdd,
    Zdd,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// All independent sets.
    Independent,
    /// Only the maximal independent sets.
    Bases,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutArg {
    /// Sizes, widths, and the represented-set count, one per line.
    Summary,
    /// Per-level widths as CSV.
    Csv,
    /// GraphViz source for the diagram.
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    /// The description's `order` field, or the ground order.
    Given,
    /// The class's defining order (free, uniform, partition, nested only).
    Good,
    /// Every permutation of the ground set, lexicographically.
    AllPermutations,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one decision diagram and print it
    Build {
        /// JSON matroid description
        spec: PathBuf,
        /// Diagram kind
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Which family of subsets the diagram represents
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Output format
        #[arg(long, value_enum, default_value = "summary")]
        out: OutArg,
    },
    /// Build all eight diagrams (matroid and dual) and check the size relations
    Relations {
        /// JSON matroid description
        spec: PathBuf,
    },
    /// Per-level minor counts, diagram widths, and width bounds, as CSV
    Analyze {
        /// JSON matroid description (or use --laminar-counterexample)
        spec: Option<PathBuf>,
        /// Which element order(s) to analyze
        #[arg(long, value_enum, default_value = "given")]
        order: OrderArg,
        /// Analyze the built-in laminar family whose diagram width grows
        /// past K+1 while the boundary connectivity stays at 2
        #[arg(long, value_name = "K")]
        laminar_counterexample: Option<usize>,
    },
    /// Exact pathwidth (minimum over element orders of the peak boundary
    /// connectivity), with a witness order
    Pathwidth {
        /// JSON matroid description
        spec: PathBuf,
    },
    /// Rank and independence of one subset, via the independence ZDD
    Rank {
        /// JSON matroid description
        spec: PathBuf,
        /// Comma-separated element names (omit for the empty set)
        #[arg(long)]
        set: Option<String>,
    },
}

fn run(cli: Cli) -> Result<CmdOut, CliError> {
    match cli.cmd {
        Cmd::Build { spec, kind, target, out } => {
            let kind = match kind {
                KindArg::Bdd => DdKind::Bdd,
                KindArg::Zdd => DdKind::Zdd,
            };
            let target = match target {
                TargetArg::Independent => TargetFamily::IndependentSets,
                TargetArg::Bases => TargetFamily::Bases,
            };
            let out = match out {
                OutArg::Summary => OutFormat::Summary,
                OutArg::Csv => OutFormat::Csv,
                OutArg::Dot => OutFormat::Dot,
            };
            commands::cmd_build(&spec, kind, target, out)
        }
        Cmd::Relations { spec } => commands::cmd_relations(&spec),
        Cmd::Analyze { spec, order, laminar_counterexample } => {
            let mode = match order {
                OrderArg::Given => OrderMode::Given,
                OrderArg::Good => OrderMode::Good,
                OrderArg::AllPermutations => OrderMode::AllPermutations,
            };
            commands::cmd_analyze(spec.as_deref(), mode, laminar_counterexample)
        }
        Cmd::Pathwidth { spec } => commands::cmd_pathwidth(&spec),
        Cmd::Rank { spec, set } => commands::cmd_rank(&spec, set.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.theorem_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_THEOREM as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
