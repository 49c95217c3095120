mod commands;
mod examples;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "lctkit", version, about = "Exact thresholds and multiplicities of monomial ideals")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Characteristic: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    pub characteristic: u64,
    /// Allow coefficients in F_p[t].
    #[arg(long, global = true)]
    pub parametric: bool,
    /// Frobenius exponent (q = p^e), or the largest one for brackets.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u32,
    /// Number of sigma terms; defaults to the number of variables.
    #[arg(long, global = true)]
    pub l: Option<usize>,
    /// Index of the sigma invariant.
    #[arg(long, global = true)]
    pub j: Option<usize>,
    /// Cap on DP/BFS states.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Worker threads for the length oracle.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Comma-separated variable names.
    #[arg(long, global = true)]
    pub vars: Option<String>,
    /// Compact JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Log canonical threshold.
    Lct { ideal: String },
    /// nu(p^e) against the maximal ideal, or against --target.
    Nu {
        ideal: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Certified brackets nu(q)/q <= c <= (nu(q)+g)/q for e = 1..=--e.
    FptBracket { ideal: String },
    /// Integral closure.
    Closure { ideal: String },
    /// Hilbert-Samuel multiplicity.
    Mult { ideal: String },
    /// Mixed multiplicities e_0..e_n with the maximal ideal.
    Mixed { ideal: String },
    /// sigma_j (needs --j).
    Sigma { ideal: String },
    /// Demailly-Pham invariant E_l.
    Dp { ideal: String },
    /// Compare E_l with the threshold.
    CheckBound { ideal: String },
    /// Search for a permuted pure-power model when E_l equals the threshold.
    Classify { ideal: String },
    /// Lojasiewicz exponent and hyperplane drops.
    Lojasiewicz { ideal: String },
    /// Check the Frobenius colon formulas against enumeration.
    ColonCheck {
        n: usize,
        q: u64,
        t: u64,
        /// Valuation weights, e.g. "1/2,1/3".
        #[arg(long)]
        weights: Option<String>,
        /// Valuation level for the second formula.
        #[arg(long, default_value = "1")]
        level: String,
    },
    /// Degeneration weight order, from vectors or from blocks of generators.
    Degenerate {
        /// Class degrees d_1 < ... < d_r.
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u64>,
        /// Exponent vector with its 1-based class, e.g. "1,0,0,2@2".
        #[arg(long = "vector")]
        vectors: Vec<String>,
        /// Generator blocks separated by ';', generators within a block by ','.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Run the golden examples and compare with the stored output.
    PaperExamples,
}

fn emit(value: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("json values serialize");
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn name(command: &Command) -> &'static str {
    match command {
        Command::Lct { .. } => "lct",
        Command::Nu { .. } => "nu",
        Command::FptBracket { .. } => "fpt-bracket",
        Command::Closure { .. } => "closure",
        Command::Mult { .. } => "mult",
        Command::Mixed { .. } => "mixed",
        Command::Sigma { .. } => "sigma",
        Command::Dp { .. } => "dp",
        Command::CheckBound { .. } => "check-bound",
        Command::Classify { .. } => "classify",
        Command::Lojasiewicz { .. } => "lojasiewicz",
        Command::ColonCheck { .. } => "colon-check",
        Command::Degenerate { .. } => "degenerate",
        Command::PaperExamples => "paper-examples",
    }
}

fn dispatch(command: &Command, opts: &Options) -> Result<Value, CliError> {
    use commands as c;
    match command {
        Command::Lct { ideal } => c::lct(ideal, opts),
        Command::Nu { ideal, target } => c::nu(ideal, target.as_deref(), opts),
        Command::FptBracket { ideal } => c::fpt_bracket(ideal, opts),
        Command::Closure { ideal } => c::closure(ideal, opts),
        Command::Mult { ideal } => c::mult(ideal, opts),
        Command::Mixed { ideal } => c::mixed(ideal, opts),
        Command::Sigma { ideal } => c::sigma(ideal, opts),
        Command::Dp { ideal } => c::dp(ideal, opts),
        Command::CheckBound { ideal } => c::check_bound(ideal, opts),
        Command::Classify { ideal } => c::classify(ideal, opts),
        Command::Lojasiewicz { ideal } => c::lojasiewicz(ideal, opts),
        Command::ColonCheck {
            n,
            q,
            t,
            weights,
            level,
        } => c::colon_check(*n, *q, *t, weights.as_deref(), level),
        Command::Degenerate {
            degrees,
            vectors,
            blocks,
        } => c::degenerate(degrees, vectors, blocks.as_deref(), opts),
        Command::PaperExamples => examples::run(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = name(&cli.command);
    match dispatch(&cli.command, &cli.opts) {
        Ok(report) => {
            emit(&report, cli.opts.pretty);
            let failed = report.pointer("/result/all_match").is_some_and(|v| v == &json!(false));
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            emit(&json!({ "command": command, "error": e.to_json() }), cli.opts.pretty);
            ExitCode::from(e.exit_code())
        }
    }
}
