use clap::{Args, Parser, Subcommand, ValueEnum};

use lhall_core::DEFAULT_MAX_POINTS;

#[derive(Debug, Parser)]
#[command(
    name = "lhall",
    version,
    about = "δ-vectors, Ehrhart counts and lattice-point bijections for s-lecture hall polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// δ-vector of P_s by one or all methods.
    Delta {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = DeltaMethod::All)]
        method: DeltaMethod,
    },
    /// Lattice-point count of the t-th dilation of P_s.
    Ehrhart {
        #[command(flatten)]
        common: Common,
        #[arg(long = "t", default_value_t = 1)]
        t: u64,
        #[arg(long, value_enum, default_value_t = EhrhartMethod::Both)]
        method: EhrhartMethod,
    },
    /// Lattice points of Par_s (or Par_{s*} with --star), graded by last coordinate.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        star: bool,
    },
    /// Apply one of the bijections to a single point or word.
    Map {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        op: MapOp,
        /// Comma-separated point or word.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Shift word for rem, rem-inv, rem-bar and phi.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Dilation for reversal-point.
        #[arg(long = "t", default_value_t = 1)]
        t: u64,
    },
    /// Exhaustively check one property.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        property: Property,
        /// Largest dilation for reversal-delta.
        #[arg(long = "t", default_value_t = 3)]
        t: u64,
        /// Truncation order for series (default n + 4).
        #[arg(long = "T")]
        order: Option<u64>,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Delta { common, .. }
            | Command::Ehrhart { common, .. }
            | Command::Enumerate { common, .. }
            | Command::Map { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// `2,3,1`, `lecture:n` or `anti:n`.
    #[arg(long)]
    pub seq: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, env = "LHALL_MAX_POINTS", default_value_t = DEFAULT_MAX_POINTS)]
    pub max_points: u64,
    #[arg(long)]
    pub parallel: bool,
    /// Report elapsed_ms as null so output is byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeltaMethod {
    Par,
    Des,
    Asc,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EhrhartMethod {
    Direct,
    Delta,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapOp {
    Rem,
    RemInv,
    RemBar,
    Phi,
    Gamma,
    Prop64,
    ReversalPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Bijection,
    Grading,
    Rev,
    Tilde,
    S1,
    Prop64,
    Volume,
    Series,
    ReversalDelta,
}

pub fn variant_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}
