//! Batch front end: graph, model and sequence reports on the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use higher_tc::cli::{cmd_graph, cmd_model, cmd_seq, GraphSource};
use higher_tc::report::Format;
use higher_tc::Budget;

#[derive(Parser)]
#[command(name = "htc", about = "Topological-complexity invariants workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFlags {
    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: Format,
    /// Run degreewise linear algebra in parallel (identical output).
    #[arg(long)]
    parallel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Clique invariants of a graph file, or of the gamma family.
    Graph {
        /// Graph file: `v <n>` header and `e <i> <j>` lines.
        path: Option<PathBuf>,
        /// Use the gamma graph for this n instead of a file.
        #[arg(long, conflicts_with = "path")]
        gamma: Option<usize>,
        /// Largest r for z_r and TC_r.
        #[arg(long = "r-max", default_value_t = 5)]
        r_max: u32,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Cohomology, cup-length, zcl and complexity data of a model file.
    Model {
        /// Model file: `gen <name> <degree>` and `d <name> = <poly>` lines.
        path: PathBuf,
        /// Largest r for zcl_r and TC_r.
        #[arg(long = "r-max", default_value_t = 2)]
        r_max: u32,
        /// Compute cohomology through this degree (required when the model
        /// has even-degree generators).
        #[arg(long)]
        truncate: Option<usize>,
        #[command(flatten)]
        common: CommonFlags,
    },
    /// Generating function and difference table of a TC sequence literal.
    Seq {
        /// Literal like "prefix=5,9,12 diff=3 stab=2".
        literal: String,
        /// Category value P(1) is checked against.
        #[arg(long)]
        cat: i64,
        /// Cup-length lower bound for the difference band.
        #[arg(long, default_value_t = 0)]
        cup: i64,
        #[command(flatten)]
        common: CommonFlags,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, common) = match &cli.command {
        Command::Graph { path, gamma, r_max, common } => {
            let budget = Budget::default().with_parallel(common.parallel);
            let source = match (path, gamma) {
                (Some(p), None) => GraphSource::File(p),
                (None, Some(n)) => GraphSource::Gamma(*n),
                _ => {
                    eprintln!("error: pass exactly one of <PATH> or --gamma <n>");
                    return ExitCode::from(2);
                }
            };
            (cmd_graph(source, *r_max, &budget), common)
        }
        Command::Model { path, r_max, truncate, common } => {
            let budget = Budget::default().with_parallel(common.parallel);
            (cmd_model(path, *r_max, *truncate, &budget), common)
        }
        Command::Seq { literal, cat, cup, common } => (cmd_seq(literal, *cat, *cup), common),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(common.format));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
