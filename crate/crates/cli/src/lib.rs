//! Command-line front end for the Lüders channel verification suites.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 for
//! invalid arguments or sizing, 3 when the operator expression does not parse.

pub mod commands;
pub mod report;
pub mod tolerance;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use luders_core::algebra::ParseError;
use luders_core::fock::{DEFAULT_ANGULAR, DEFAULT_DIM, DEFAULT_RADIAL};

use commands::fock::FockArgs;
use report::{format_number, ReportDocument, ReportError};
use tolerance::{ToleranceError, Tolerances};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "luders", version, about = "Verify Lüders channels of coherent-state POVMs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write the check table as CSV.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Replace a named tolerance.
    #[arg(long = "tol-override", global = true, value_name = "NAME=VALUE")]
    pub tol_override: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spin coherent-state channel: unity, spectrum, fixed point, damping.
    Spin {
        /// Twice the spin, 1..=50.
        #[arg(long = "two-s")]
        two_s: u32,
    },
    /// Truncated Fock space channel on a disk grid.
    Fock {
        #[arg(long, default_value_t = DEFAULT_DIM)]
        dim: usize,
        /// Disk radius; defaults to sqrt(dim)/2.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_RADIAL)]
        radial: usize,
        #[arg(long, default_value_t = DEFAULT_ANGULAR)]
        angular: usize,
    },
    /// Normal, anti-normal and Lüders forms of an operator expression.
    Order {
        #[arg(allow_hyphen_values = true)]
        expression: String,
        /// Also enumerate the fixed space up to this degree.
        #[arg(long = "fixed-space", value_name = "N")]
        fixed_space: Option<u32>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Tolerance(#[from] ToleranceError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(luders_core::Error),
    #[error(transparent)]
    Report(#[from] ReportError),
}

impl From<luders_core::Error> for CliError {
    fn from(e: luders_core::Error) -> Self {
        use luders_core::Error as E;
        match e {
            E::Parse(p) => Self::Parse(p),
            E::SpinOutOfRange(_)
            | E::Truncation { .. }
            | E::DegreeTooHigh { .. }
            | E::FixedSpaceOutOfRange(_) => Self::Invalid(e.to_string()),
            other => Self::Core(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Invalid(_) | Self::Tolerance(_) => EXIT_INVALID,
            Self::Parse(_) => EXIT_PARSE,
            Self::Core(_) | Self::Report(_) => EXIT_CHECK_FAILED,
        }
    }
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<ReportDocument, CliError> {
    let mut params = BTreeMap::new();
    let (name, results) = match &cli.command {
        Command::Spin { two_s } => {
            let tol = Tolerances::new(commands::spin::TOLERANCES).with_overrides(&cli.tol_override)?;
            params.insert("two_s".to_string(), two_s.to_string());
            ("spin", commands::spin::run(*two_s, &tol)?)
        }
        Command::Fock {
            dim,
            radius,
            radial,
            angular,
        } => {
            let tol = Tolerances::new(commands::fock::TOLERANCES).with_overrides(&cli.tol_override)?;
            let args = FockArgs {
                dim: *dim,
                radius: *radius,
                radial: *radial,
                angular: *angular,
            };
            let (dim, radius, guard) = commands::fock::validate(&args)?;
            params.insert("dim".to_string(), dim.to_string());
            params.insert("radius".to_string(), format_number(radius));
            params.insert("radial_nodes".to_string(), radial.to_string());
            params.insert("angular_nodes".to_string(), angular.to_string());
            params.insert("guard".to_string(), guard.to_string());
            ("fock", commands::fock::run(&args, &tol)?)
        }
        Command::Order {
            expression,
            fixed_space,
        } => {
            Tolerances::new(&[]).with_overrides(&cli.tol_override)?;
            params.insert("expression".to_string(), expression.clone());
            if let Some(n) = fixed_space {
                params.insert("fixed_space".to_string(), n.to_string());
            }
            let (summary, results) = commands::order::run(expression, *fixed_space)?;
            let io = |e: std::io::Error| CliError::Invalid(format!("cannot write output: {e}"));
            writeln!(out, "normal form:      {}", summary.normal).map_err(io)?;
            writeln!(out, "anti-normal form: {}", summary.anti_normal).map_err(io)?;
            writeln!(out, "lueders:          {}", summary.luders).map_err(io)?;
            writeln!(out, "well_ordered: {}", summary.well_ordered).map_err(io)?;
            if let Some(n) = fixed_space {
                writeln!(out, "fixed space, degree <= {n}: dimension {}", summary.fixed_basis.len()).map_err(io)?;
                for b in &summary.fixed_basis {
                    writeln!(out, "  {b}").map_err(io)?;
                }
            }
            ("order", results)
        }
    };
    Ok(ReportDocument::new(name, params, results))
}

/// Runs one command, writing the text report to `out` and diagnostics to
/// `err`; returns the process exit status.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let doc = match execute(cli, out) {
        Ok(doc) => doc,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let _ = doc.write_text(out);
    let written = cli
        .json
        .as_deref()
        .map(|p| doc.write_json(p))
        .transpose()
        .and_then(|_| cli.csv.as_deref().map(|p| doc.write_csv(p)).transpose());
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_CHECK_FAILED;
    }
    if doc.all_pass() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}
