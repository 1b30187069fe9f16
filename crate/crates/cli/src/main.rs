use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use convexgraph::theorems::ClaimId;
use convexgraph::Norm;

mod check;
mod gen;
mod input;
mod search;
mod verify;

use input::{InstanceArgs, LatticeArgs};

#[derive(Parser, Debug)]
#[command(name = "convexgraph", version, about = "Discrete convexity and subharmonicity on graphs and lattices")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Relative tolerance for floating-point comparisons.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a generated graph in the graph file format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Convex hull of a set.
    Hull {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        set: PathBuf,
        /// Also compute the hull by brute force and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Per-vertex convexity and subharmonicity checks.
    Check {
        kind: CheckKind,
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long = "fn", value_name = "FILE")]
        function: Option<PathBuf>,
        /// Use the unweighted neighborhood mean.
        #[arg(long)]
        unweighted: bool,
    },
    /// Run a claim suite or a single claim instance.
    Verify(verify::VerifyArgs),
    /// Search graph families for a convex but not subharmonic vertex.
    Search(search::SearchArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenFamily {
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    Grid { w: usize, h: usize },
    King { w: usize, h: usize },
    TriTiling { w: usize, h: usize },
    Lattice {
        #[arg(long)]
        norm: Norm,
        #[command(flatten)]
        spec: LatticeArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    SetConvex,
    FnConvex,
    Subharmonic,
    Harmonic,
    Midpoint,
    NnProperty,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// A check failed or a claim was refuted; the report was printed.
    Negative,
    /// Bad input or flags.
    Usage(String),
}

impl Failure {
    fn context(self, what: &str) -> Self {
        match self {
            Failure::Usage(msg) => Failure::Usage(format!("{what}: {msg}")),
            other => other,
        }
    }
}

pub fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("report serializes")),
        Format::Text => print!("{}", text()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let Cli { format, tolerance, command } = cli;
    match command {
        Command::Gen { family } => gen::run(&family),
        Command::Hull { instance, set, oracle } => check::hull(format, tolerance, &instance, &set, oracle),
        Command::Check {
            kind,
            instance,
            set,
            function,
            unweighted,
        } => check::run(format, tolerance, kind, &instance, set.as_deref(), function.as_deref(), unweighted),
        Command::Verify(args) => verify::run(format, tolerance, &args),
        Command::Search(args) => search::run(format, &args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

pub fn parse_claim(s: &str) -> Result<ClaimId, String> {
    s.parse::<ClaimId>().map_err(|e| e.to_string())
}
