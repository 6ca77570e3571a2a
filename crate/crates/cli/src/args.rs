use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "pairlaw", version, about = "Color laws of matching pairs")]
pub struct Cli {
    /// Worker threads for simulations (results do not depend on it).
    #[arg(long, global = true, env = "PAIRLAW_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Method-1 and Method-2 laws of a distribution and their distance.
    Derive(DeriveArgs),
    /// The one-parameter family: maximizer or rescaled curve.
    Family(FamilyArgs),
    /// Limit discrepancy functions.
    Limit(LimitArgs),
    /// Random search over the sorted simplex.
    Search(SearchArgs),
    /// Left/right pairs.
    Shoes {
        #[command(subcommand)]
        command: ShoesCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    M1,
    M2,
    Both,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    /// Comma-separated probabilities or a one-column file.
    #[arg(long)]
    pub dist: String,
    #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
    pub method: MethodChoice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyAction {
    Max,
    Curve,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = FamilyAction::Max)]
    pub action: FamilyAction,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    /// With `curve`, emit the curves of every n' in 1..=n.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Socks,
    ShoesDiag,
    ShoesGrid,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, value_enum)]
    pub kind: LimitKind,
    /// Print the maximizer and the maximum.
    #[arg(long, conflicts_with = "c")]
    pub argmax: bool,
    /// Single parameter value (`c` for socks, `a = b` for shoes-diag).
    #[arg(long, alias = "a")]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 0.05)]
    pub from: f64,
    #[arg(long, default_value_t = 8.0)]
    pub to: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 160)]
    pub samples: usize,
    /// Geometric instead of uniform spacing.
    #[arg(long)]
    pub log: bool,
    /// Absolute tolerance (quadrature, or argmax location with --argmax).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub points: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum ShoesCommand {
    /// Both laws and the discrepancy of one pair.
    Derive(ShoesDeriveArgs),
    /// Discrepancy along the witness family.
    SupDemo(SupDemoArgs),
}

#[derive(Debug, Args)]
pub struct ShoesDeriveArgs {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    /// Solve Method 2 exactly when there are at most 10 colors.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SupDemoArgs {
    /// Comma-separated n values, each at least 16.
    #[arg(long, default_value = "100,1000,10000")]
    pub n: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
