use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "tal", version, about = "Temporal logic, automata algebra and attention-mask compilation")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads for parallel checks (results do not depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a formula on a string (at the end position unless --position).
    Eval {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        string: String,
        /// Tokens: `ab` for single characters or `a,b`; inferred when absent.
        #[arg(long)]
        alphabet: Option<String>,
        /// 1-based position in 1..=N+1.
        #[arg(long)]
        position: Option<usize>,
    },
    /// Operator depth and size of a formula.
    Depth {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Expand Y^k into Y-chains and Ystar into P.
    Expand {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Rewrite every Y using Y^k and MOD(m, .) predicates.
    RewriteMod {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
    /// Build the DFA of a U-free formula.
    ToDfa {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        minimize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize a DFA given as JSON.
    DfaMinimize {
        #[arg(long)]
        dfa: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fragment report of a DFA's language.
    DfaClassify {
        #[arg(long)]
        dfa: Option<PathBuf>,
        /// Classify a registry language instead of a file.
        #[arg(long)]
        benchmark: Option<String>,
    },
    /// Search for the forbidden configuration; exit 1 if one is found.
    DfaConfig {
        #[arg(long)]
        dfa: PathBuf,
    },
    /// Transition semigroup of the minimal DFA.
    Semigroup {
        #[arg(long)]
        dfa: PathBuf,
        /// Include the full multiplication table.
        #[arg(long)]
        table: bool,
    },
    /// Compile a formula into a transformer (model JSON).
    Compile {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        alphabet: Option<String>,
        /// Attention score of satisfying positions.
        #[arg(long, default_value_t = 20.0)]
        gain: f64,
        /// Longest input length the softmax margin must cover.
        #[arg(long, default_value_t = 10_000)]
        max_len: usize,
        #[arg(long, default_value_t = 8)]
        exponent_bits: u32,
        #[arg(long, default_value_t = 23)]
        mantissa_bits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a model on a string.
    RunModel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        string: String,
    },
    /// Check a model against a formula; exit 1 on any mismatch.
    Verify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 10)]
        exhaustive_len: usize,
        #[arg(long, default_value_t = 100)]
        spot_len: usize,
        #[arg(long, default_value_t = 100)]
        spot_count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a labeled JSONL dataset for a registry language.
    GenData {
        #[arg(long)]
        language: String,
        /// `a..b` (inclusive) or a comma-separated list.
        #[arg(long)]
        lengths: String,
        #[arg(long)]
        per_length: usize,
        /// `balanced` or `uniform`.
        #[arg(long, default_value = "balanced")]
        balance: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// List the registry languages.
    BenchmarkList,
    /// Run a named agreement suite (or `all`); exit 1 on any disagreement.
    TheoremSuite {
        #[arg(long)]
        name: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Materialize an attention mask as a 0/1 matrix.
    Masks {
        /// `global` or `local`.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        k: Option<usize>,
        /// Number of positions (N + 1).
        #[arg(long)]
        len: usize,
    },
}
