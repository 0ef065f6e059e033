//! `cremona-kit`: JSON in, JSON (or a text summary) out.
//!
//! Exit codes: 0 on success, 1 on malformed input (bad JSON, schema
//! violations, bad flags), 2 when the input parses but fails validation or
//! the requested check comes out negative.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

mod commands;
pub mod corpus;

pub const MAX_DEGREE_VAR: &str = "CREMONA_KIT_MAX_DEGREE";
pub const DEFAULT_MAX_DEGREE: u32 = 24;

#[derive(Parser, Debug)]
#[command(name = "cremona-kit", version, about = "Adjoint chains, Cremona maps and de Jonquieres groups in exact arithmetic")]
pub struct Cli {
    /// Output format. JSON is the stable contract; text is a summary.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Print timing and diagnostics to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Read the JSON document from a file (`-` for stdin).
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Inline JSON document.
    #[arg(long, value_name = "JSON")]
    pub json: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Geometric genus of a curve with ordinary singularities.
    Genus(Input),
    /// Check a curve description, including declared multiplicities against
    /// its polynomial.
    Validate(Input),
    /// Successive adjoints of a curve.
    AdjointChain(Input),
    /// Terminal class of the adjoint chain of a curve or of a system
    /// `{"degree", "mults"}`.
    Classify(Input),
    /// Compose `{"maps": [f, g, ...]}` as `f o g o ...`.
    MapCompose(Input),
    /// Does `{"map", "curve"}` fix the curve pointwise?
    MapFixcheck(Input),
    /// Order in PGL(2, Q(x)) of an element `{"h","a1","a2"}` or a matrix
    /// `{"matrix": {"a11","a12","a21","a22"}}`.
    JonqOrder(Input),
    /// Product `{"u", "v"}` of two elements over the same h.
    JonqMul(Input),
    /// Check that an element fixes y^2 = h(x).
    JonqFixCheck(Input),
    /// Evaluate the rational-pencil equations for `(n; mults)`.
    PencilCheck {
        #[arg(long)]
        n: i64,
        /// Comma-separated base multiplicities.
        #[arg(long, value_delimiter = ',', num_args = 0.., allow_negative_numbers = true)]
        mults: Vec<i64>,
        /// Multiplicities at the nodes of a rational sextic; adds the free
        /// intersection bound to the report.
        #[arg(long, value_delimiter = ',', num_args = 0.., allow_negative_numbers = true)]
        nodes: Option<Vec<i64>>,
    },
    /// All rational pencil types up to degree `max`.
    PencilEnum {
        #[arg(long)]
        max: i64,
        /// Refuse `max` above this.
        #[arg(long, default_value_t = cremona_core::pencil::DEFAULT_ENUM_BOUND)]
        bound: i64,
    },
    /// Run the built-in corpus of worked examples.
    Examples,
}

/// What a command produced.
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum CliError {
    /// Exit 1.
    Input(String),
    /// Exit 2.
    Invalid(String),
}

pub(crate) struct Report {
    pub json: serde_json::Value,
    pub text: String,
    /// False turns into exit code 2.
    pub ok: bool,
}

pub(crate) struct Ctx {
    pub max_degree: u32,
    pub verbose: u8,
    pub log: Vec<String>,
}

impl Ctx {
    pub fn note(&mut self, level: u8, msg: impl Into<String>) {
        if self.verbose >= level {
            self.log.push(msg.into());
        }
    }
}

impl Input {
    fn read(&self, stdin: &mut dyn Read) -> Result<String, CliError> {
        if let Some(s) = &self.json {
            return Ok(s.clone());
        }
        let path = self.input.as_ref().expect("clap enforces one source");
        let mut buf = String::new();
        if path.as_os_str() == "-" {
            stdin
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
        } else {
            buf = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?;
        }
        Ok(buf)
    }
}

/// Parses with the line and column of syntax errors and the field path of
/// schema errors.
pub(crate) fn parse<T: DeserializeOwned>(src: &str) -> Result<T, CliError> {
    // serde_json's message carries the line and column
    let value: serde_json::Value = serde_json::from_str(src)
        .map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    serde_path_to_error::deserialize(value).map_err(|e| {
        CliError::Input(format!("schema violation at `{}`: {}", e.path(), e.inner()))
    })
}

fn max_degree() -> Result<u32, CliError> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("{MAX_DEGREE_VAR}={s} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: rendered, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx {
        max_degree: DEFAULT_MAX_DEGREE,
        verbose: cli.verbose,
        log: Vec::new(),
    };
    let result = max_degree().and_then(|d| {
        ctx.max_degree = d;
        commands::dispatch(&cli.command, stdin, &mut ctx)
    });
    ctx.note(1, format!("elapsed: {} ms", start.elapsed().as_millis()));
    let mut stderr: String = ctx.log.iter().map(|l| format!("{l}\n")).collect();
    match result {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string(&r.json).expect("values serialize");
                    s.push('\n');
                    s
                }
                Format::Text => r.text,
            };
            Output {
                code: if r.ok { 0 } else { 2 },
                stdout,
                stderr,
            }
        }
        Err(CliError::Input(msg)) => {
            stderr.push_str(&format!("error: {msg}\n"));
            Output { code: 1, stdout: String::new(), stderr }
        }
        Err(CliError::Invalid(msg)) => {
            stderr.push_str(&format!("invalid: {msg}\n"));
            Output { code: 2, stdout: String::new(), stderr }
        }
    }
}
