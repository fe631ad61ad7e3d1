//! The `kxor` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;

pub mod cache;
mod commands;
pub mod golden;
pub mod output;
pub mod verify;

pub use commands::qaoa_wins;
pub use golden::Check;
pub use output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kxor", version, about = "Bounds and obstruction instances for Max kXOR")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write outputs even when reference checks fail.
    #[arg(long, global = true)]
    pub no_golden: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Depth-1 QAOA optimum per (k, D) and in the large-degree limit.
    QaoaTable(TableArgs),
    /// Best threshold algorithm per (k, D) and in the large-degree limit.
    ThresholdTable(TableArgs),
    /// Parisi values P(k) for pure models or a model file.
    Parisi(ParisiArgs),
    /// kSAT constants from a supplied covariance model.
    Ksat(KsatArgs),
    /// QAOA, threshold and Parisi columns side by side.
    Compare(CompareArgs),
    /// Build a partial-Z2 instance and its bounds.
    Nlts(NltsArgs),
    /// Run oracle and invariant suites.
    Verify(VerifyArgs),
    /// Generate a regular triangle-free instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TableArgs {
    /// Arity list, e.g. `2-19` or `3,5`.
    #[arg(long, default_value = "2-19")]
    pub k: String,
    /// Degree list; `inf` selects the large-degree limit, e.g. `1-299,inf`.
    #[arg(long, default_value = "inf")]
    pub degrees: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SolverArgs {
    /// Nonzero pieces of the step order parameter.
    #[arg(long, default_value_t = 2)]
    pub pieces: usize,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub quad: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Reduced grid and a single restart.
    #[arg(long)]
    pub quick: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ParisiArgs {
    #[arg(long, default_value = "2-15", conflicts_with = "model")]
    pub k: String,
    /// JSON model file with `xi`, `pieces` and optional `grid`, `quad`.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Ignore and overwrite cached values.
    #[arg(long)]
    pub fresh: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KsatArgs {
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Covariance model for the kSAT functional.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub quick: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long, default_value = "2-6")]
    pub k: String,
    #[arg(long, default_value = "10,100,1000,10000,inf")]
    pub degrees: String,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NltsArgs {
    /// `cycle:N`, `regular:N:D` or `petersen`.
    #[arg(long, default_value = "cycle:6")]
    pub inner: String,
    #[arg(long, default_value_t = crate::nlts::DEFAULT_R)]
    pub r: f64,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Override the number of source plus sink nodes.
    #[arg(long)]
    pub new_nodes: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = verify::Suite::All)]
    pub suite: verify::Suite,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub degree: usize,
    #[arg(long)]
    pub n: usize,
    /// Also report the exact optimum (n ≤ 24).
    #[arg(long)]
    pub solve: bool,
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

pub fn run(cli: Cli) -> crate::Result<i32> {
    let g = &cli.global;
    match &cli.command {
        Command::QaoaTable(a) => commands::qaoa_table(g, a),
        Command::ThresholdTable(a) => commands::threshold_table(g, a),
        Command::Parisi(a) => commands::parisi(g, a),
        Command::Ksat(a) => commands::ksat(g, a),
        Command::Compare(a) => commands::compare(g, a),
        Command::Nlts(a) => commands::nlts(g, a),
        Command::Verify(a) => commands::verify(g, a),
        Command::Gen(a) => commands::gen(g, a),
    }
}

/// `2-19`, `3`, `2,5,7`, or empty.
pub fn parse_list(spec: &str) -> crate::Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| crate::error::invalid_arg(format!("bad number `{s}` in `{spec}`")));
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}

/// A finite degree or the large-degree limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Finite(usize),
    Limit,
}

pub fn parse_degrees(spec: &str) -> crate::Result<Vec<Degree>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part.eq_ignore_ascii_case("inf") {
            out.push(Degree::Limit);
        } else {
            out.extend(parse_list(part)?.into_iter().map(Degree::Finite));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("2-4,7").unwrap(), vec![2, 3, 4, 7]);
        assert!(parse_list("").unwrap().is_empty());
        assert!(parse_list("x").is_err());
        assert_eq!(parse_degrees("1-2,inf").unwrap(), vec![Degree::Finite(1), Degree::Finite(2), Degree::Limit]);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(main_with_args(["kxor", "no-such-command"]), EXIT_USAGE);
        assert_eq!(main_with_args(["kxor", "qaoa-table", "--format", "xml"]), EXIT_USAGE);
    }
}
