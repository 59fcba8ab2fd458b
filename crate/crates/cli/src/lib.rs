//! Batch front end: parses a problem file, runs one subcommand and renders
//! a deterministic report.

pub mod commands;
pub mod problem;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use problem::{parse_problem, ProblemFile};
pub use report::{Report, Status};

/// Exit code for usage errors.
pub const USAGE: i32 = 3;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "dfan",
    version,
    about = "Standard fans and flatness certificates for D-modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Reduced standard basis at a weight
    Gb,
    /// Division of the problem element by the standard basis
    Divide,
    /// The standard fan
    Fan,
    /// Maximal cones, the cone of a weight, or whether a cone fits in one
    Cones,
    /// Whether the fiber of R_V(N) at the origin vanishes
    Fiber,
    /// Flatness certificates over a basic cone and a coordinate ideal
    FlatCert,
    /// Kernel normalization of a relation sum W^(a_i) Q_i = 0
    NormalizeSyzygy,
    /// Filtration of a monomial ideal by coordinate quotients
    MonomialChain,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Divide => "divide",
            Command::Fan => "fan",
            Command::Cones => "cones",
            Command::Fiber => "fiber",
            Command::FlatCert => "flat-cert",
            Command::NormalizeSyzygy => "normalize-syzygy",
            Command::MonomialChain => "monomial-chain",
        }
    }
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Flags {
    /// Problem file
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Weight form, e.g. "[1,1/2]"
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Rows L_1..L_k of a basic cone, e.g. "[[1,0],[0,1]]"
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub cone: Option<String>,
    /// Monomial ideal, e.g. "W1, W2^2"
    #[arg(long, global = true)]
    pub ideal: Option<String>,
    /// Truncation degree for searches and oracles
    #[arg(long, global = true)]
    pub degree_bound: Option<u32>,
    /// Largest power of t tried in membership tests
    #[arg(long, global = true)]
    pub l_max: Option<u32>,
    /// Print the JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Expected verdict; a mismatch exits with 1
    #[arg(long, global = true)]
    pub expect: Option<String>,
}

/// Rendered output and exit code of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn usage(message: String) -> Output {
    Output {
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
        code: USAGE,
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run(args: &[String]) -> Output {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Output {
                    stdout: String::new(),
                    stderr: text,
                    code: USAGE,
                },
            };
        }
    };
    let Some(path) = cli.flags.input.clone() else {
        return usage("--input is required".into());
    };
    let input = path.display().to_string();
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return usage(format!("cannot read {input}: {e}")),
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => return usage(format!("{input}: {e}")),
    };
    match commands::execute(cli.command, &problem, &cli.flags, &input) {
        Ok(report) => Output {
            stdout: if cli.flags.json {
                report.render_json()
            } else {
                report.render_text()
            },
            stderr: String::new(),
            code: report.exit_code,
        },
        Err(CliError::Usage(m)) => usage(m),
    }
}
