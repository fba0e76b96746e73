use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use noflab::search::DEFAULT_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "noflab", version, about = "Number-on-the-forehead protocol laboratory")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Exit with code 3 when a search runs out of budget.
    #[arg(long, global = true)]
    pub require_exhaustive: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report (or the witness, for `search`) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a table as JSON. SPEC is xor:n, modn:n, zmd:m,d or a JSON path.
    Table {
        spec: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Run a protocol on one input or on all of them.
    Run(RunArgs),
    /// Extremal searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Check witnesses stored in files.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Lower-bound tools.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// The tripartite graph of a k = 3 table, as JSON.
    Graph {
        #[arg(long)]
        table: String,
    },
    /// Channel schedule from a star-free partition of a table, as CSV.
    Schedule {
        #[arg(long)]
        table: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ProtocolName {
    ExactlyN,
    ExactTZd,
    ZmdModular,
    CflBaseline,
    Z2Cover,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, value_enum, required_unless_present = "config")]
    pub protocol: Option<ProtocolName>,
    /// Protocol as JSON, e.g. {"protocol":"exactly_n","n":15,"m":4}.
    #[arg(long, conflicts_with = "protocol")]
    pub config: Option<String>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Target digits, least significant first.
    #[arg(long = "T", value_delimiter = ',')]
    pub target: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',')]
    pub x: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub y: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub z: Option<Vec<u64>>,
    /// Run every input and report an aggregate row.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Subcommand, Debug)]
pub enum SearchCmd {
    /// Largest star-free subset of a table's accepted points.
    Alpha {
        #[arg(long)]
        table: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Largest star-free line-respecting subset of the full box.
    Alphabar {
        #[arg(long)]
        n: u32,
        #[arg(long = "N")]
        range: u32,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Largest X-free subset of Z_q^n.
    Xfree {
        /// theorem19, hales-jewett or capset.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        param: Option<u32>,
        #[arg(long)]
        n: u32,
    },
    /// Least number of star-free classes partitioning a table's accepted points.
    Chi {
        #[arg(long)]
        table: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// A point set has no star (and is accepted by --table, if given).
    Starfree {
        file: PathBuf,
        #[arg(long)]
        table: Option<String>,
    },
    /// A JSON list of point sets partitions the accepted points into star-free classes.
    Cover {
        file: PathBuf,
        #[arg(long)]
        table: String,
    },
    /// A matching family is edge-disjoint and induced.
    Matchings { file: PathBuf },
    /// An extraction trace is the one the coloring produces.
    Trace {
        file: PathBuf,
        #[arg(long)]
        table: String,
        #[arg(long)]
        coloring: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Least number of colors the extraction inequality allows.
    #[command(name = "least-L")]
    LeastL {
        #[arg(long)]
        n: u64,
        #[arg(long = "N")]
        range: u64,
    },
    /// Evaluate both inequalities at (n, N, L).
    Check {
        #[arg(long)]
        n: u64,
        #[arg(long = "N")]
        range: u64,
        #[arg(long = "L")]
        colors: u32,
    },
    /// Run the extraction on a coloring (default: an exact minimum coloring).
    Extract {
        #[arg(long)]
        table: String,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
}
