//! Front end for the `l1l2` binary: argument parsing, dispatch, and reports.
//!
//! [`run`] never touches the process environment, so tests drive it directly.

pub mod input;
pub mod report;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use l1l2_core::coordinate::{DEFAULT_SAMPLES, DEFAULT_TOL};
use l1l2_core::subspace_bound::{DEFAULT_RESTARTS, DEFAULT_SEED};
use l1l2_core::{
    analyze, is_coordinate_subspace, parallelogram_check, peakiness, probe_sqrt_dim_bound,
    satisfies_sqrt_s_bound, subspace_constant_exact, subspace_constant_heuristic, vector_to_step,
    ErrorKind,
};
use serde_json::Value;
use thiserror::Error;

use input::InputDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CAPABILITY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Core(#[from] l1l2_core::Error),
    #[error("{0}")]
    WrongKind(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) | CliError::WrongKind(_) => EXIT_PARSE,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Malformed => EXIT_PARSE,
                ErrorKind::Domain => EXIT_DOMAIN,
                ErrorKind::Capability => EXIT_CAPABILITY,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "l1l2",
    version,
    about = "Exact constants for the l1-l2 norm inequality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tightness constant, norms, and nearest constant-modulus vector of a vector.
    AnalyzeVector {
        #[command(flatten)]
        input: InputArgs,
        /// Also test ‖x‖₁ ≤ √s‖x‖₂ for this s.
        #[arg(long)]
        s: Option<f64>,
    },
    /// Sharp ℓ1 bound for unit vectors of a spanned subspace.
    AnalyzeSubspace {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decide whether a spanned subspace is a coordinate subspace.
    DetectCoordinate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Peakiness ‖f − 1‖₂² of a step function, or of a vector as a step function.
    Peakiness {
        #[command(flatten)]
        input: InputArgs,
        /// Scale the function to unit L2 norm first.
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input file (JSON document or one CSV row); standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command, stdin) {
        Ok(report) => Outcome {
            code: EXIT_OK,
            stdout: report::render(&report),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_input(args: &InputArgs, stdin: &mut dyn Read) -> Result<Vec<u8>, CliError> {
    match &args.input {
        Some(path) => Ok(std::fs::read(path)?),
        None => {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn wrong_kind(command: &str, doc: &InputDocument, expected: &str) -> CliError {
    CliError::WrongKind(format!(
        "{command} expects a {expected} document, got {}",
        doc.kind()
    ))
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Value, CliError> {
    match command {
        Command::AnalyzeVector { input, s } => {
            let bytes = read_input(&input, stdin)?;
            let doc = input::parse(&bytes)?;
            let InputDocument::Vector(x) = &doc else {
                return Err(wrong_kind("analyze-vector", &doc, "vector"));
            };
            let r = analyze(x)?;
            let test = s
                .map(|s| satisfies_sqrt_s_bound(x, s).map(|ok| (s, ok)))
                .transpose()?;
            let result = report::tightness(&r, x.field(), test);
            Ok(report::envelope("analyze-vector", &bytes, None, result))
        }
        Command::AnalyzeSubspace {
            input,
            mode,
            restarts,
            seed,
        } => {
            let bytes = read_input(&input, stdin)?;
            let doc = input::parse(&bytes)?;
            let InputDocument::Subspace(s) = &doc else {
                return Err(wrong_kind("analyze-subspace", &doc, "subspace"));
            };
            let (r, restarts, seed) = match mode {
                Mode::Exact => (subspace_constant_exact(s)?, None, None),
                Mode::Heuristic => (
                    subspace_constant_heuristic(s, restarts, seed)?,
                    Some(restarts),
                    Some(seed),
                ),
            };
            let result = report::subspace_bound(&r, s.ambient_dim(), s.dim(), restarts);
            Ok(report::envelope("analyze-subspace", &bytes, seed, result))
        }
        Command::DetectCoordinate {
            input,
            tol,
            samples,
            seed,
        } => {
            let bytes = read_input(&input, stdin)?;
            let doc = input::parse(&bytes)?;
            let InputDocument::Subspace(s) = &doc else {
                return Err(wrong_kind("detect-coordinate", &doc, "subspace"));
            };
            let decision = is_coordinate_subspace(s, tol)?;
            let probe = probe_sqrt_dim_bound(s, samples, seed)?;
            let result = report::coordinate(&decision, s.field(), s.ambient_dim(), s.dim(), &probe);
            Ok(report::envelope(
                "detect-coordinate",
                &bytes,
                Some(seed),
                result,
            ))
        }
        Command::Peakiness { input, normalize } => {
            let bytes = read_input(&input, stdin)?;
            let doc = input::parse(&bytes)?;
            let (f, source) = match doc {
                InputDocument::StepFunction(f) => (f, "step_function"),
                InputDocument::Vector(x) => (vector_to_step(&x)?, "vector"),
                other => return Err(wrong_kind("peakiness", &other, "step_function or vector")),
            };
            let f = if normalize { f.normalized()? } else { f };
            let c = peakiness(&f)?;
            let (lhs, _) = parallelogram_check(&f)?;
            let figures = report::PeakinessFigures {
                source,
                cells: f.values().len(),
                normalized: normalize,
                l1: f.l1_norm(),
                l2: f.l2_norm(),
                c,
                parallelogram_lhs: lhs,
            };
            Ok(report::envelope(
                "peakiness",
                &bytes,
                None,
                report::peakiness(&figures),
            ))
        }
    }
}
