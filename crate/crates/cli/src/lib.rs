//! `quaddec` command-line front end.
//!
//! Every subcommand reads JSON inputs, writes one JSON document or one CSV
//! table, prints a residual summary to stderr and exits with
//!
//! - `0` when every residual gate passes,
//! - `1` when a gate fails or the computation errors,
//! - `2` when arguments or inputs do not parse.

mod commands;
mod selftest;
mod table;

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

pub use table::{fmt_f64, Table};

pub const MIN_SAMPLES: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "quaddec", version, about = "Kernel decompositions on quadrature domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Common {
    /// Number of boundary samples used by residual gates and tables.
    #[arg(long, global = true, default_value_t = 256)]
    pub samples: usize,
    /// Residual gate.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for root-finding starts and randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproxKindArg {
    Area,
    Arclength,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose data on the unit circle.
    DecomposeCircle {
        #[arg(long)]
        data: PathBuf,
        /// poles_outside, poles_inside, holo_restriction or antiholo_restriction.
        #[arg(long, default_value = "poles_outside")]
        form: String,
    },
    /// Decompose boundary data into kernel families.
    Decompose {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        data: PathBuf,
        /// k_lambda, k_kbar or lambda_lambdabar.
        #[arg(long, default_value = "k_lambda")]
        form: String,
    },
    /// Schwarz function and boundary table.
    Schwarz {
        #[arg(long)]
        domain: PathBuf,
    },
    /// Polynomial equation of the boundary.
    Implicitize {
        #[arg(long)]
        domain: PathBuf,
    },
    /// Quadrature nodes and weights.
    Quadrature {
        #[arg(long)]
        domain: PathBuf,
    },
    /// Boundary description through the boundary point with parameter `theta`.
    BoundaryEq {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
    },
    /// Kernel values at interior points and boundary identity residuals.
    Kernels {
        #[arg(long)]
        domain: PathBuf,
        /// Base point `re,im`; defaults to `P(0.3)`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        base: Option<quaddec::C64>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Harmonic extension on an interior grid against a Fourier reference.
    Dirichlet {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Dirichlet-to-Neumann image.
    Dtn {
        #[arg(long)]
        domain: PathBuf,
        #[arg(long)]
        data: PathBuf,
    },
    /// Quadrature domain near the image of an analytic map.
    Approximate {
        /// `{"series": [...]}` or `{"samples": [...]}`.
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value_t = ApproxKindArg::Area)]
        kind: ApproxKindArg,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Every invariant suite on built-in and seeded random inputs.
    Selftest,
}

fn parse_complex(s: &str) -> Result<quaddec::C64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected 're,im', got '{s}'"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("real part: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("imaginary part: {e}"))?;
    Ok(quaddec::C64::new(re, im))
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit 2.
    Input(String),
    /// Computation failed; exit 1.
    Compute(quaddec::Error),
    /// Output could not be written; exit 1.
    Output(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Output(m) => write!(f, "output error: {m}"),
        }
    }
}

impl From<quaddec::Error> for CliError {
    fn from(e: quaddec::Error) -> Self {
        CliError::Compute(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) | CliError::Output(_) => 1,
        }
    }
}

/// One residual gate: `value < limit` (or `value <= limit` when `inclusive`).
#[derive(Debug, Clone, serde::Serialize)]
pub struct Gate {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

impl Gate {
    pub fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Gate {
            name: name.into(),
            value,
            limit,
            pass: value < limit,
        }
    }

    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Gate {
            name: name.into(),
            value,
            limit,
            pass: value <= limit,
        }
    }

    pub fn check(name: impl Into<String>, ok: bool) -> Self {
        Gate {
            name: name.into(),
            value: if ok { 0.0 } else { 1.0 },
            limit: 0.5,
            pass: ok,
        }
    }
}

/// What a subcommand produced.
pub struct Outcome {
    pub json: serde_json::Value,
    pub table: Table,
    pub gates: Vec<Gate>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn validate(common: &Common) -> Result<(), CliError> {
    if common.samples < MIN_SAMPLES {
        return Err(CliError::Input(format!(
            "--samples must be at least {MIN_SAMPLES}, got {}",
            common.samples
        )));
    }
    if !(common.tol > 1e-14 && common.tol < 1e-2) {
        return Err(CliError::Input(format!(
            "--tol must lie in (1e-14, 1e-2), got {}",
            common.tol
        )));
    }
    Ok(())
}

fn quiet() -> bool {
    std::env::var("QUADDEC_LOG").is_ok_and(|v| v == "quiet")
}

/// Runs a parsed command, writing the result to `--output` or `stdout` and
/// the summary to `stderr`. Returns the exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    validate(&cli.common)?;
    log::debug!("running {:?}", cli.command);
    let outcome = commands::dispatch(&cli.command, &cli.common)?;
    let body = match cli.common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.json).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            s.into_bytes()
        }
        Format::Csv => outcome.table.to_csv().map_err(CliError::Output)?,
    };
    match &cli.common.output {
        Some(path) => fs::write(path, &body).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(&body).map_err(|e| CliError::Output(e.to_string()))?,
    }
    let failed: Vec<&Gate> = outcome.gates.iter().filter(|g| !g.pass).collect();
    if !quiet() {
        for g in &outcome.gates {
            let _ = writeln!(
                stderr,
                "{} {}: {:.3e} (limit {:.1e})",
                if g.pass { "ok  " } else { "FAIL" },
                g.name,
                g.value,
                g.limit
            );
        }
    }
    if let Some(g) = failed.first() {
        let _ = writeln!(stderr, "error: residual gate failed: {}", g.name);
        return Ok(1);
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            code
        }
    }
}
