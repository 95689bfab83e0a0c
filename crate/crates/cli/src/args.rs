use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use htsimplify::io::Format;
use htsimplify::MeasureKind;

#[derive(Debug, Parser)]
#[command(
    name = "htsimplify",
    version,
    about = "Scaling-aware line simplification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a Koch curve and print its basic statistics
    Koch(KochArgs),
    /// Simplify every line of a file
    Simplify(SimplifyArgs),
    /// Head/tail statistics of vertex measures or Koch triangles
    Stats(StatsArgs),
    /// Run several algorithms at a common vertex budget
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct KochArgs {
    #[arg(long)]
    pub iterations: u32,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub ratio: f64,
    #[arg(long = "height-factor", default_value_t = 1.0)]
    pub height_factor: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; inferred from the extension of --out when omitted
    #[arg(long)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum AlgoName {
    Ht,
    Dp,
    Vw,
}

impl AlgoName {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgoName::Ht => "ht",
            AlgoName::Dp => "dp",
            AlgoName::Vw => "vw",
        }
    }
}

#[derive(Debug, Args)]
pub struct SimplifyArgs {
    #[arg(long, value_enum)]
    pub algo: AlgoName,
    /// Vertex measure for ht (x, ratio, area, angle)
    #[arg(long)]
    pub measure: Option<MeasureKind>,
    /// Lowest head/tail level kept by ht
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long = "min-area")]
    pub min_area: Option<f64>,
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long = "head-limit")]
    pub head_limit: Option<f64>,
    #[arg(long = "repair-crossings")]
    pub repair_crossings: bool,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Input format; inferred from the file extension when omitted
    #[arg(long)]
    pub format: Option<Format>,
    /// Fail on unsupported geometries instead of skipping them
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "koch_triangles"])))]
pub struct StatsArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Use the triangle sizes of the Koch curve of this many iterations
    #[arg(long = "koch-triangles")]
    pub koch_triangles: Option<u32>,
    #[arg(long, default_value = "x")]
    pub measure: MeasureKind,
    #[arg(long = "head-limit", default_value_t = htsimplify::scaling::DEFAULT_HEAD_LIMIT)]
    pub head_limit: f64,
    /// Write a rank-size plot as SVG
    #[arg(long)]
    pub plot: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Comma-separated list of ht, dp, vw
    #[arg(long, value_delimiter = ',', required = true)]
    pub algos: Vec<String>,
    #[arg(long)]
    pub budget: usize,
    #[arg(long, default_value = "x")]
    pub measure: MeasureKind,
    #[arg(long = "head-limit", default_value_t = htsimplify::scaling::DEFAULT_HEAD_LIMIT)]
    pub head_limit: f64,
    /// Also write the table as CSV
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub format: Option<Format>,
    #[arg(long)]
    pub strict: bool,
}
