//! Batch front end for the `mcgauge` engine.
//!
//! [`run`] takes parsed command-line arguments and returns the exit code and
//! the rendered output; `main` only writes it out. See the `docs/` directory
//! for the problem file schema.

pub mod corpus;
pub mod document;
mod pipelines;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use mcgauge::cohomology::CohomologyError;
use mcgauge::exactpoly::PolyError;
use mcgauge::glagroup::GroupError;
use mcgauge::multivec::MultiVecError;
use mcgauge::solver::SolverError;
use thiserror::Error;

pub use document::{ProblemDocument, ReportDocument};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("the document has none of the multivectors {0}")]
    MissingRole(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    MultiVec(#[from] MultiVecError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl CliError {
    pub fn is_internal(&self) -> bool {
        match self {
            CliError::Solver(e) => e.is_internal(),
            CliError::Cohomology(e) => matches!(e, CohomologyError::NotAComplex { .. }),
            _ => false,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        if self.is_internal() {
            ExitCode::Internal
        } else {
            ExitCode::InvalidInput
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Obstructed = 2,
    InvalidInput = 3,
    Internal = 4,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Example {
    R3Nonextendable,
    So3Roundtrip,
    AbelianObstructed,
}

#[derive(Debug, Parser)]
#[command(name = "mcgauge", version, about = "Exact gauge equivalence of formal Poisson structures near a submanifold")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Override the document's jet order.
    #[arg(long, global = true)]
    pub jet_order: Option<u32>,
    /// Override the document's tangent-degree cap.
    #[arg(long, global = true)]
    pub x_cap: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report (makes reports non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Tangency, Maurer–Cartan defect and Jacobiator cross-validation.
    Check { input: PathBuf },
    /// Dimensions of the quotient cohomology at the document's levels.
    Cohomology { input: PathBuf },
    /// Search for a gauge taking `gamma_prime` to `gamma`.
    Solve { input: PathBuf },
    /// Compare `pi` with its linear part (point submanifolds).
    Linearize { input: PathBuf },
    /// Extend the 1-jet of `first_order` to a higher jet.
    Extend {
        input: PathBuf,
        /// Target jet order; defaults to one more than the document's.
        #[arg(long)]
        to_order: Option<u32>,
    },
    /// Print a bundled problem document.
    Example {
        #[arg(value_enum)]
        name: Example,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit: ExitCode,
    pub output: String,
    pub report: Option<ReportDocument>,
}

/// Runs one command. `MCGAUGE_THREADS`, when set, bounds the worker pool.
pub fn run(cli: &Cli) -> Outcome {
    let threads = std::env::var("MCGAUGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok());
    match threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_inner(cli)),
            Err(_) => run_inner(cli),
        },
        _ => run_inner(cli),
    }
}

fn run_inner(cli: &Cli) -> Outcome {
    if let Command::Example { name } = &cli.command {
        return Outcome { exit: ExitCode::Success, output: document::print(&corpus::example(*name)), report: None };
    }
    let start = Instant::now();
    let (name, input) = match &cli.command {
        Command::Check { input } => ("check", input),
        Command::Cohomology { input } => ("cohomology", input),
        Command::Solve { input } => ("solve", input),
        Command::Linearize { input } => ("linearize", input),
        Command::Extend { input, .. } => ("extend", input),
        Command::Example { .. } => unreachable!(),
    };
    let result = load(input).and_then(|doc| {
        let settings = pipelines::Settings {
            jet_order: cli.jet_order.unwrap_or(doc.jet_order),
            x_cap: cli.x_cap.or(doc.x_cap),
        };
        match &cli.command {
            Command::Check { .. } => pipelines::check(&doc, &settings),
            Command::Cohomology { .. } => pipelines::cohomology(&doc, &settings),
            Command::Solve { .. } => pipelines::solve(&doc, &settings),
            Command::Linearize { .. } => pipelines::linearize(&doc, &settings),
            Command::Extend { to_order, .. } => pipelines::extend(&doc, &settings, *to_order),
            Command::Example { .. } => unreachable!(),
        }
    });
    let (exit, mut report) = match result {
        Ok(pair) => pair,
        Err(e) => {
            let exit = e.exit_code();
            let status = if exit == ExitCode::Internal { "internal-error" } else { "invalid-input" };
            let mut report = ReportDocument::new(name, status);
            report.error = Some(e.to_string());
            (exit, report)
        }
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let output = match cli.format {
        Format::Json => document::print(&report),
        Format::Text => pipelines::summary(&report),
    };
    Outcome { exit, output, report: Some(report) }
}

pub fn load(path: &std::path::Path) -> Result<ProblemDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    document::parse(&text)
}
