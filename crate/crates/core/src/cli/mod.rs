//! Command-line front end.

mod commands;
mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "crlab", version, about = "Exact contact and CR computations on Lie algebras")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jacobi identity.
    Validate(AlgebraArg),
    /// Contact filtration or CR chains.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Strict, weak and contact nondegeneracy of a CR algebra.
    Classify(CrArgs),
    /// Associated graded algebra.
    Grade(Subspaces),
    /// Tanaka prolongation of the negative part.
    Prolong(ProlongArgs),
    /// Star-field realization and its kernel.
    Realize(RealizeArgs),
    /// Dimensions of truncated symmetry spaces.
    Symmetries(SymmetryArgs),
    /// Write the manifest and canonical subspaces of an algebra.
    Export(ExportArgs),
}

#[derive(Subcommand, Debug)]
pub enum ChainCommand {
    /// Filtration of a contact pair or triple.
    Contact(ContactArgs),
    /// Chains q̄⁽ʰ⁾ and q̃⁽ʰ⁾ of a CR algebra.
    Cr(CrArgs),
}

#[derive(Args, Debug)]
pub struct AlgebraArg {
    /// Manifest file or `preset:NAME[:PARAM]`.
    pub algebra: String,
}

#[derive(Args, Debug)]
pub struct ContactArgs {
    pub algebra: String,
    /// Subspace file for l0.
    #[arg(long = "l")]
    pub l: String,
    /// Subspace file for h0.
    #[arg(long = "h")]
    pub h: Option<String>,
}

#[derive(Args, Debug)]
pub struct CrArgs {
    pub algebra: String,
    /// Subspace file for q (complex coefficients).
    #[arg(long = "q")]
    pub q: String,
}

#[derive(Args, Debug)]
pub struct Subspaces {
    pub algebra: String,
    #[arg(long = "l", conflicts_with = "q")]
    pub l: Option<String>,
    #[arg(long = "h", conflicts_with = "q")]
    pub h: Option<String>,
    #[arg(long = "q")]
    pub q: Option<String>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroMode {
    /// J-commuting derivations with --q, all derivations otherwise.
    Auto,
    All,
    J,
    /// Degree-zero part of the associated graded algebra.
    Graded,
}

#[derive(Args, Debug)]
pub struct ProlongArgs {
    #[command(flatten)]
    pub spaces: Subspaces,
    #[arg(long, default_value_t = 10)]
    pub max_degree: i64,
    #[arg(long, value_enum, default_value_t = ZeroMode::Auto)]
    pub zero: ZeroMode,
    /// Also check G′₂ₖ₊₁ = 0 for this k.
    #[arg(long)]
    pub finiteness: Option<usize>,
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    pub algebra: String,
    #[arg(long = "h")]
    pub h: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub order: usize,
    /// Check the anti-homomorphism identity at this many random points mod 2⁶¹ − 1
    /// instead of symbolically.
    #[arg(long)]
    pub modp: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SymmetryArgs {
    pub algebra: String,
    #[arg(long = "l", conflicts_with = "q")]
    pub l: Option<String>,
    #[arg(long = "q")]
    pub q: Option<String>,
    #[arg(long = "h")]
    pub h: Option<String>,
    #[arg(long, default_value_t = 7)]
    pub order: usize,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    pub algebra: String,
    #[arg(long)]
    pub out: PathBuf,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Chain(ChainCommand::Contact(_)) => "chain contact",
            Command::Chain(ChainCommand::Cr(_)) => "chain cr",
            Command::Classify(_) => "classify",
            Command::Grade(_) => "grade",
            Command::Prolong(_) => "prolong",
            Command::Realize(_) => "realize",
            Command::Symmetries(_) => "symmetries",
            Command::Export(_) => "export",
        }
    }
}

/// Output text and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let command = cli.command.name();
    let (code, body) = match commands::dispatch(&cli.command) {
        Ok(result) => (0, json!({ "command": command, "result": result })),
        Err(e) => (1, json!({ "command": command, "error": e.payload() })),
    };
    let mut report = body;
    report["version"] = json!(env!("CARGO_PKG_VERSION"));
    let text = if cli.json {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    } else {
        human(&report)
    };
    if code == 0 {
        Outcome { code, stdout: text, stderr: String::new() }
    } else {
        Outcome { code, stdout: String::new(), stderr: text }
    }
}

fn human(report: &Value) -> String {
    let mut out = String::new();
    let body = report.get("result").or_else(|| report.get("error")).unwrap_or(&Value::Null);
    if report.get("error").is_some() {
        out.push_str("error\n");
    }
    flatten("", body, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}
