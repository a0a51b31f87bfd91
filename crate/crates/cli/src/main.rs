//! `ksforge`: filters over streams of MMP hypergraph lines.

mod commands;
mod stream;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ksforge", version, about = "Generate and analyse Kochen-Specker hypergraphs as MMP line streams")]
pub struct Cli {
    /// Dimension n of the hypergraphs read or generated.
    #[arg(long, global = true, default_value_t = 4)]
    pub dim: usize,
    /// Skip malformed input lines (reported on stderr) and drop empty edges.
    #[arg(long, global = true)]
    pub lenient: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a master set from vector components, or coordinatize/verify input lines.
    Vecfind(VecfindArgs),
    /// Annotate lines with `ks= critical= pp=`, optionally filtering.
    States01(States01Args),
    /// Strip (or add) edges, emitting every child.
    Mmpstrip(MmpstripArgs),
    /// Drop lines isomorphic to an earlier line.
    Shortd(ShortdArgs),
    /// Keep lines that contain the needle as a subgraph.
    Subgraph(SubgraphArgs),
    /// Annotate lines with a maximal loop `loop=<L>:<edge indices>`.
    Loop(LoopArgs),
    /// Annotate lines with their δ-pairs (edges sharing exactly n-2 vertices).
    Delta,
    /// Annotate lines with parity-proof data.
    Parity(ParityArgs),
    /// Generate the KS class of a master set.
    Class(ClassArgs),
    /// Tally (k, m) of critical lines as `k<TAB>m<TAB>count<TAB>pp_count`.
    Stats(StatsArgs),
    /// Split lines into connected components, largest first.
    Decompose,
}

#[derive(Args, Debug)]
pub struct VecfindArgs {
    /// Component list, e.g. "0,1,-1,i,-i" or "0,1,w".
    #[arg(long)]
    pub components: Option<String>,
    /// Emit the master set (the default without --assign/--verify).
    #[arg(long)]
    pub master: bool,
    /// Emit only the master line, not its connected components.
    #[arg(long)]
    pub no_split: bool,
    /// Coordinatize every line of this file over --components.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["master", "verify"])]
    pub assign: Option<PathBuf>,
    /// Check the coordinatization block of every stdin line.
    #[arg(long, conflicts_with = "master")]
    pub verify: bool,
    /// Cap on |components|^n.
    #[arg(long, default_value_t = 100_000_000)]
    pub tuple_limit: u64,
    /// Cap on clique-search nodes while building a master.
    #[arg(long, default_value_t = 2_000_000_000)]
    pub clique_budget: u64,
    /// Cap on tentative assignments in --assign.
    #[arg(long, default_value_t = u64::MAX)]
    pub budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    Ks,
    Nonks,
    Critical,
}

#[derive(Args, Debug)]
pub struct States01Args {
    /// Keep only lines in this class.
    #[arg(long, value_enum)]
    pub filter: Option<Filter>,
    /// Keep only critical KS lines (same as --filter critical).
    #[arg(long)]
    pub critical: bool,
    /// Keep only lines with a parity proof.
    #[arg(long)]
    pub parity: bool,
}

#[derive(Args, Debug)]
pub struct MmpstripArgs {
    /// Number of edges removed (or added with --add).
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Draw --samples random removals instead of all of them.
    #[arg(long, requires = "seed")]
    pub random: bool,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Seed for --random (mandatory there).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Add edges of this master instead of removing.
    #[arg(long, value_name = "FILE", conflicts_with = "random")]
    pub add: Option<PathBuf>,
    /// Drop isomorphic children of each line.
    #[arg(long)]
    pub dedup: bool,
}

#[derive(Args, Debug)]
pub struct ShortdArgs {
    /// Append the canonical key as `key=<mmp>`.
    #[arg(long)]
    pub key: bool,
}

#[derive(Args, Debug)]
pub struct SubgraphArgs {
    /// File whose first line is the hypergraph to look for.
    #[arg(long, value_name = "FILE")]
    pub needle: PathBuf,
    /// Keep lines that do not contain the needle instead.
    #[arg(long)]
    pub invert: bool,
}

#[derive(Args, Debug)]
pub struct LoopArgs {
    /// Search-node budget per line; `exhaustive=0` marks a cut-off search.
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Seed for the edge order.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ParityArgs {
    /// Also list up to this many parity-proof edge subsets.
    #[arg(long, default_value_t = 0)]
    pub subsets: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Breadth,
    Random,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    /// File holding the master line; stdin's first line if omitted.
    #[arg(long, value_name = "FILE")]
    pub master: Option<PathBuf>,
    /// Emit criticals only.
    #[arg(long)]
    pub criticals: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::Breadth)]
    pub strategy: StrategyArg,
    /// Seed for the random strategy (mandatory there).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random descents for the random strategy.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Stop breadth generation after the level with this many edges.
    #[arg(long, default_value_t = 0)]
    pub min_edges: usize,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Print per-edge-count summary rows instead of the cell table.
    #[arg(long)]
    pub summary: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    ksforge::par::init_from_env();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ksforge: {e:#}");
            ExitCode::FAILURE
        }
    }
}
