mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "minent",
    version,
    about = "Minimum-entropy set cover, orientation and coloring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Instance file; standard input when absent or `-`.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Print the full report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Exit with status 1 when a reported guarantee fails.
    #[arg(long, global = true)]
    pub assert_bound: bool,

    /// Convergence tolerance for graph entropy, in bits.
    #[arg(long, global = true, default_value_t = minent_core::graphent::DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum entropy set cover.
    Setcover {
        #[command(subcommand)]
        action: SetcoverCmd,
    },
    /// Minimum entropy orientation.
    Orient {
        #[command(subcommand)]
        action: OrientCmd,
    },
    /// Minimum entropy coloring.
    Color {
        #[command(subcommand)]
        action: ColorCmd,
    },
    /// Graph entropy over the stable set polytope.
    Graphent {
        #[command(subcommand)]
        action: GraphentCmd,
    },
    /// Instance generators.
    Gen {
        #[command(subcommand)]
        action: GenCmd,
    },
    /// Haplotype phasing and side-information coding.
    App {
        #[command(subcommand)]
        action: AppCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum SetcoverCmd {
    Greedy,
    Exact {
        /// Largest assignment space the exact search may face.
        #[arg(long, default_value_t = minent_core::setcover::DEFAULT_EXACT_LIMIT)]
        limit: u128,
    },
    /// Greedy solution with its dual certificate and a feasibility scan.
    Certify {
        #[arg(long, default_value_t = minent_core::setcover::DEFAULT_SUBSET_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrientCmd {
    Biased,
    Exact {
        #[arg(long, default_value_t = minent_core::orientation::DEFAULT_EXACT_LIMIT)]
        limit: u128,
    },
    /// Sampling estimate of the biased orientation's entropy.
    Estimate {
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Shift the estimate up by epsilon.
        #[arg(long)]
        one_sided: bool,
        /// Override the computed sample count.
        #[arg(long)]
        samples: Option<usize>,
        /// Visit every vertex once instead of sampling.
        #[arg(long)]
        full_sweep: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ColorCmd {
    /// Greedy with an exact maximum independent set oracle.
    Greedy,
    /// Greedy with the minimum-degree independent set heuristic.
    GreedyApprox,
    /// Layer algorithm for interval graphs (interval file input).
    Interval,
    Exact {
        #[arg(long, default_value_t = minent_core::coloring::DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum GraphentCmd {
    Compute,
    /// H(G) + H(complement) - log2 n.
    Split,
    /// Greedy coloring entropy against H + log2(H + 1) + C.
    GreedyBound {
        #[arg(long, default_value_t = minent_core::graphent::DEFAULT_BOUND_CONSTANT)]
        constant: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Kind {
    Graph,
    Connected,
    Regular,
    Bipartite,
    Interval,
    Setcover,
}

#[derive(Subcommand, Debug)]
pub enum GenCmd {
    /// Staircase interval gadget with rows 1..=k.
    Jk {
        #[arg(long)]
        k: usize,
    },
    Random {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Edges, degree, right side, grid or number of sets, depending on the kind.
        #[arg(long)]
        size: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Greedy,
    Exact,
}

#[derive(Subcommand, Debug)]
pub enum AppCmd {
    /// Phase a genotype panel through set cover.
    Haplotype {
        #[arg(long, value_enum, default_value_t = Solver::Greedy)]
        solver: Solver,
        #[arg(long, default_value_t = minent_core::apps::DEFAULT_HAPLOTYPE_CAP)]
        cap: usize,
    },
    /// Code a source with side information via its confusability graph.
    Confusability {
        #[arg(long, value_enum, default_value_t = Solver::Greedy)]
        color: Solver,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match commands::run(&cli, argv) {
        Ok(commands::Output::Report(mut report)) => {
            report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            if cli.global.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if cli.global.assert_bound && !report.all_hold() {
                for c in report.checks.iter().filter(|c| !c.holds) {
                    eprintln!("guarantee failed: {} ({} > {})", c.name, c.lhs, c.rhs);
                }
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Ok(commands::Output::Text(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
