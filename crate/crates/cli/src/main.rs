//! `qkernel`: check, solve, shrink, search and generate digraphs.
//!
//! Exit codes: 0 success or property holds, 1 property fails or an invariant
//! broke, 2 usage or parse error, 3 resource cap exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qkernel::explorer::{ScanMode, Shard};
use qkernel::GeneratorKind;

#[derive(Parser, Debug)]
#[command(name = "qkernel", version, about = "Kernels and quasi-kernels of digraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for `search`.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Re-check loop invariants after every shrink step.
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Independent,
    Kernel,
    QuasiKernel,
    InwardDominated,
    SourceFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveTarget {
    Kernel,
    MinQk,
    QkChvatal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    EdgeList,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test a property of a vertex set.
    Check {
        /// Edge-list file, or `-` for stdin.
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Property,
        /// Comma-separated vertex ids.
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Compute a kernel, a minimum quasi-kernel, or a constructed quasi-kernel.
    Solve {
        file: PathBuf,
        #[arg(value_enum)]
        what: SolveTarget,
        /// Print the graph as DOT with the result highlighted.
        #[arg(long)]
        dot: bool,
    },
    /// Shrink a kernel of a source-free digraph to a quasi-kernel of at most n/2 vertices.
    Shrink {
        file: PathBuf,
        /// Starting kernel; the minimum kernel is searched for when omitted.
        #[arg(long)]
        kernel: Option<String>,
        /// Write the JSON certificate here.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Scan digraph space for theorem failures and half-size counterexamples.
    Search {
        /// Vertex counts: `N` or `LO..HI` (inclusive).
        #[arg(long = "n")]
        n_range: String,
        #[arg(long, default_value = "exhaustive")]
        mode: ScanMode,
        /// Comma-separated filters: source-free, has-kernel, kernel-free, odd-cycle-free, odd-cycle.
        #[arg(long, default_value = "")]
        filters: String,
        /// Samples per n in random mode.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        arc_prob: f64,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write a per-n CSV summary here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// `index/total` for partitioned runs.
        #[arg(long)]
        shard: Option<Shard>,
        /// Append-only file of completed shards; a shard already listed is skipped.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Allow exhaustive scans at n = 6 (about 10^9 graphs).
        #[arg(long)]
        allow_n6: bool,
        /// Skip lemma checks and certificate re-verification.
        #[arg(long)]
        no_verify: bool,
        /// List every graph that passes the filters.
        #[arg(long)]
        collect_matches: bool,
    },
    /// Generate a digraph.
    Gen {
        #[arg(value_parser = parse_kind)]
        kind: GeneratorKind,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        arc_prob: f64,
        #[arg(short = 'o', long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: GraphFormat,
    },
    /// Re-verify a shrink certificate against a graph.
    VerifyCert { file: PathBuf, certificate: PathBuf },
}

fn parse_kind(s: &str) -> Result<GeneratorKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
