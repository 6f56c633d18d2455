//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hyperion", version, about = "Ordinals, surreal sign sequences, hyperseries and hyperlogarithm ladders")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of sampled instances.
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    /// Maximum ordinal nesting depth accepted in inputs.
    #[arg(long, global = true, env = "HYPERION_DEPTH_GUARD")]
    pub depth_guard: Option<usize>,
    /// Working precision in bits for numeric evaluation.
    #[arg(long, global = true, default_value_t = 320)]
    pub precision: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalize an ordinal expression to Cantor normal form.
    Ord { expr: String },
    /// Show a sign sequence (or dyadic rational) in both forms.
    Seq { expr: String },
    /// Simplest number between left and right options.
    Bracket {
        /// Left option; repeat or separate with ';'.
        #[arg(long, value_delimiter = ';')]
        left: Vec<String>,
        /// Right option; repeat or separate with ';'.
        #[arg(long, value_delimiter = ';')]
        right: Vec<String>,
    },
    /// Conway arithmetic on finite sign sequences.
    Conway {
        op: ConwayOp,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: Option<String>,
        /// Taylor depth for exp-check.
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Canonical form of a series.
    Series { expr: String },
    /// Derivative of a finite-support series.
    Diff {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
    /// Normal form of a ladder term.
    Normalize { term: String },
    /// Asymptotic comparison of two ladder terms.
    Cmp {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
        /// Also evaluate both sides numerically at this point.
        #[arg(long)]
        at: Option<String>,
    },
    /// Series expansion of a ladder term.
    ToSeries { term: String },
    /// Whether l[gamma] is atomic below strength beta.
    Atomic {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        beta: String,
    },
    /// Hyperlogarithm of an atomic monomial.
    Hyperlog {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        beta: String,
    },
    /// Sampled audit of a hyperlogarithm axiom.
    Audit {
        #[arg(long)]
        axiom: String,
        #[arg(long, default_value = "1")]
        mu: String,
    },
    /// Gonshor exponential cut against a reference enclosure.
    ExpCheck {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Monotone E and L ladder chains up to strength w^nu.
    Chains {
        #[arg(long, default_value = "3")]
        nu: String,
        /// Term to place between chain elements; repeatable.
        #[arg(long)]
        point: Vec<String>,
    },
    /// Interactive session.
    Repl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConwayOp {
    Add,
    Mul,
    Neg,
    ExpCheck,
}
