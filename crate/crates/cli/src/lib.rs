//! Command-line front end: argument parsing, configuration, reports and the corpus driver.

pub mod commands;
pub mod config;
pub mod corpus;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use finitude::solvability::Status;

pub use config::Config;

pub const EXIT_REPRESENTABLE: i32 = 0;
pub const EXIT_NOT_REPRESENTABLE: i32 = 1;
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "finitude", version, about = "Decide solvability of equations in finite terms")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Configuration file with `key = value` lines.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monodromy group and radical verdicts for P(x, y) = 0.
    Algebraic {
        expr: String,
        /// Also decide representability by k-radicals.
        #[arg(long)]
        k: Option<usize>,
        /// Print the radical tower certificate.
        #[arg(long)]
        tower: bool,
    },
    /// Rational witnesses for y^(n) + a_1 y^(n-1) + ... + a_n y = 0.
    Ode {
        order: usize,
        /// Coefficients a_1, ..., a_n as rational functions of x.
        #[arg(allow_hyphen_values = true)]
        coefficients: Vec<String>,
        /// Degree bound of the witness search.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Integral of a rational function in Liouville form.
    Integrate { expr: String },
    /// Ritt decomposition and invertibility by radicals of a polynomial in x.
    Decompose {
        expr: String,
        /// Decide invertibility by k-radicals instead.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Monodromy and triangularizability of a Fuchsian system given as JSON ("-" reads stdin).
    Fuchsian { file: PathBuf },
    /// Puiseux expansions of P(x, y) = 0 at a point.
    Puiseux {
        expr: String,
        /// Centre: a Gaussian rational such as 0, 1/2 or 1+i, or "inf".
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
        /// Truncation order, a rational such as 3 or 5/2.
        #[arg(long)]
        order: Option<String>,
    },
    /// Run the regression corpus in a file or directory of `.case` files.
    Corpus { path: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Algebraic { .. } => "algebraic",
            Command::Ode { .. } => "ode",
            Command::Integrate { .. } => "integrate",
            Command::Decompose { .. } => "decompose",
            Command::Fuchsian { .. } => "fuchsian",
            Command::Puiseux { .. } => "puiseux",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// Result of a command before it is wrapped in a report.
#[derive(Debug)]
pub struct Outcome {
    pub status: Option<Status>,
    pub output: Value,
    pub text: String,
    /// Overrides the exit code derived from `status`.
    pub exit: Option<i32>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Malformed input or arguments.
    Usage(String),
    /// The computation could not reach a verdict.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failed(_) => EXIT_UNDECIDED,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Failed(_) => "failure",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => m,
        }
    }
}

pub fn status_exit(status: Option<Status>) -> i32 {
    match status {
        Some(Status::Representable) | None => EXIT_REPRESENTABLE,
        Some(Status::NotRepresentable) => EXIT_NOT_REPRESENTABLE,
        Some(Status::Undecided) => EXIT_UNDECIDED,
    }
}

/// What a run printed and how it exits.
#[derive(Debug, Clone)]
pub struct Run {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
    /// The JSON report, also when text output was requested.
    pub report: Option<Value>,
}

fn input_echo(command: &Command) -> Value {
    match command {
        Command::Algebraic { expr, k, tower } => json!({ "expr": expr, "k": k, "tower": tower }),
        Command::Ode { order, coefficients, bound } => {
            json!({ "order": order, "coefficients": coefficients, "bound": bound })
        }
        Command::Integrate { expr } => json!({ "expr": expr }),
        Command::Decompose { expr, k } => json!({ "expr": expr, "k": k }),
        Command::Fuchsian { file } => json!({ "file": file.display().to_string() }),
        Command::Puiseux { expr, at, order } => json!({ "expr": expr, "at": at, "order": order }),
        Command::Corpus { path } => json!({ "path": path.display().to_string() }),
    }
}

/// Moves options that follow the coefficients of `ode` in front of them, since the
/// coefficient list accepts values starting with `-`.
fn hoist_ode_options(args: &[String]) -> Vec<String> {
    let mut pos = 1;
    while pos < args.len() && args[pos].starts_with('-') {
        pos += if args[pos] == "--config" { 2 } else { 1 };
    }
    if args.get(pos).map(String::as_str) != Some("ode") {
        return args.to_vec();
    }
    let (mut options, mut rest) = (Vec::new(), Vec::new());
    let mut it = args[pos + 1..].iter();
    while let Some(a) = it.next() {
        match a.as_str() {
            "--" => {
                rest.push(a.clone());
                rest.extend(it.by_ref().cloned());
            }
            "--json" | "--help" | "-h" => options.push(a.clone()),
            "--bound" | "--config" => {
                options.push(a.clone());
                options.extend(it.next().cloned());
            }
            _ if a.starts_with("--bound=") || a.starts_with("--config=") => options.push(a.clone()),
            _ => rest.push(a.clone()),
        }
    }
    let mut out = args[..=pos].to_vec();
    out.extend(options);
    out.extend(rest);
    out
}

/// Parses `args` (including the program name) and runs the command.
pub fn run(args: &[String]) -> Run {
    let args = hoist_ode_options(args);
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Run { exit: 0, stdout: text, stderr: String::new(), report: None }
                }
                _ => Run { exit: EXIT_USAGE, stdout: String::new(), stderr: text, report: None },
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Run {
    let loaded = match &cli.config {
        Some(path) => Config::load(path),
        None => Ok(Config::default()),
    };
    let (mut config, config_error) = match loaded {
        Ok(c) => (c, None),
        Err(e) => (Config::default(), Some(CliError::Usage(e))),
    };
    match &cli.command {
        Command::Ode { bound: Some(b), .. } => config.witness_degree_bound = Some(*b),
        Command::Puiseux { order: Some(o), .. } => config.puiseux_order = o.clone(),
        _ => {}
    }
    let start = Instant::now();
    let result = match config_error {
        Some(e) => Err(e),
        None => commands::execute(&cli.command, &config),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (exit, status, output, error, text) = match result {
        Ok(o) => {
            let exit = o.exit.unwrap_or_else(|| status_exit(o.status));
            (exit, o.status, o.output, Value::Null, o.text)
        }
        Err(e) => {
            let err = json!({ "kind": e.kind(), "message": e.message() });
            (e.exit_code(), None, Value::Null, err, String::new())
        }
    };
    let report = json!({
        "tool": { "name": "finitude", "version": env!("CARGO_PKG_VERSION") },
        "command": cli.command.name(),
        "input": input_echo(&cli.command),
        "config": config.to_json(),
        "status": status,
        "exit_code": exit,
        "output": output,
        "error": error,
        "timing": { "seconds": seconds },
    });
    let stderr = match report["error"]["message"].as_str() {
        Some(m) => format!("error: {m}\n"),
        None => String::new(),
    };
    let stdout = if cli.json {
        format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes"))
    } else {
        text
    };
    Run { exit, stdout, stderr, report: Some(report) }
}

/// Removes the timing field, which is the only part of a report allowed to differ between runs.
pub fn without_timing(report: &Value) -> Value {
    let mut r = report.clone();
    if let Some(o) = r.as_object_mut() {
        o.remove("timing");
    }
    r
}
