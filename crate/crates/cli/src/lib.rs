//! Command-line front end: argument parsing, document loading and dispatch.

use std::io::Read;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

pub mod commands;
pub mod report;
pub mod spec;

pub use report::{Report, Table};

/// Failure of a command, classified by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Math(#[from] semitorsor::Error),
}

impl CliError {
    /// `1` for mathematical obstructions, `2` for usage and schema errors.
    pub fn exit_status(&self) -> i32 {
        use semitorsor::Error as E;
        match self {
            CliError::Math(
                E::OrbitObstruction
                | E::NoFixedPoint(_)
                | E::NotFaithful
                | E::NoQuotient(..)
                | E::NotFree
                | E::NotSurjective
                | E::NonUniformFibers
                | E::NotInAutQ
                | E::NotBasis,
            ) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

const AFTER_HELP: &str = "\
Documents are read from a file path, from standard input when given as '-',
or inline when the argument starts with '{'. Groups may also be given by
short name: trivial, z<n>, s<n>, d<n>, q8, and products such as z2xz2.

Loop words are comma-separated signed 1-based loop indices, e.g. \"1,-2\".
The first letter is traversed first, so its clutching map acts first:
the holonomy of \"1,2\" is psi_2 after psi_1.

Exit status: 0 success, 1 mathematical obstruction or failed check,
2 usage or schema error.";

#[derive(Debug, Parser)]
#[command(name = "semitorsor", version, about = "Finite G-sets, frames, wreath products and flat bundles", after_help = AFTER_HELP)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify group bundles over the circle by conjugacy classes of Aut(G).
    ClassifyCircle {
        /// Group name or group document.
        #[arg(long)]
        group: String,
    },
    /// Connected components of a bundle's total space.
    Components { bundle: String },
    /// The frame bundle: clutching elements and components.
    FrameBundle {
        bundle: String,
        /// Also list every frame with its component.
        #[arg(long)]
        list_frames: bool,
    },
    /// Holonomy of a bundle along a loop word.
    Holonomy {
        bundle: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Try to extend the fiberwise S_n action of an n-sheeted covering.
    SnAction { bundle: String },
    /// Decompose a bundle into its orbit covering and quotient map.
    Decompose { bundle: String },
    /// Holonomy of a flat U(1) bundle along a loop word.
    U1Holonomy {
        /// U(1) connection document.
        connection: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Parallel transport of a point `angle:slot` along a loop word.
    U1Transport {
        /// U(1) connection document.
        connection: String,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
    },
    /// The connection induced along z -> z^q.
    Pushforward {
        /// U(1) connection document.
        connection: String,
        #[arg(long, allow_hyphen_values = true)]
        power: i64,
    },
    /// Discrete connection form of a sampled path `angle:slot,angle:slot,...`.
    DivisionCheck {
        /// U(1) connection document.
        connection: String,
        #[arg(long, allow_hyphen_values = true)]
        path: String,
        /// Time between samples.
        #[arg(long, default_value = "1")]
        step: String,
    },
    /// Run a verification suite: torsor, functor-laws, ses, wreath-iso,
    /// division-rules, equivalence, appendix-b, decomposition, transport.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_group: usize,
        #[arg(long, default_value_t = 3)]
        max_orbits: usize,
        /// Use only this group.
        #[arg(long)]
        group: Option<String>,
        /// Use only this orbit count.
        #[arg(long)]
        orbits: Option<usize>,
        #[arg(long, default_value_t = semitorsor::verify::DEFAULT_SEED)]
        seed: u64,
    },
}

/// Reads a document argument: `-` for standard input, inline JSON, or a path.
pub fn load_document(arg: &str) -> Result<Value, CliError> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io {
                path: "<stdin>".into(),
                source,
            })?;
        s
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?
    };
    Ok(serde_json::from_str(&text)?)
}

/// A group argument: a document as for [`load_document`], or a short name.
pub fn load_group(arg: &str) -> Result<spec::GroupSpec, CliError> {
    if arg == "-" || arg.trim_start().starts_with('{') || Path::new(arg).is_file() {
        Ok(serde_json::from_value(load_document(arg)?)?)
    } else {
        Ok(spec::GroupSpec::Name(arg.to_string()))
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli, echo: &str) -> Result<Report, CliError> {
    commands::dispatch(&cli.command, echo)
}

/// Parses `argv` (program name first), runs it, and returns the rendered
/// output with the exit status.
pub fn run<I, S>(argv: I) -> (String, i32)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    let echo = std::iter::once("semitorsor".to_string())
        .chain(argv.iter().skip(1).cloned())
        .collect::<Vec<_>>()
        .join(" ");
    match execute(&cli, &echo) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.render_text(),
                Format::Json => report.render_json(),
            };
            (text, report.exit_status)
        }
        Err(e) => {
            let code = e.exit_status();
            let text = match cli.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => {
                    let doc = serde_json::json!({ "command": echo, "error": e.to_string(), "exit_status": code });
                    format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
                }
            };
            (text, code)
        }
    }
}
