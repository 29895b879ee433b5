//! Command-line front end for the Nichols algebra engine.

pub mod commands;
pub mod error;
pub mod input;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use error::{CliError, Kind, Location};
pub use input::{parse_input, InputDocument};
use nichols_core::Limits;

/// Version of the JSON envelope printed with `--json`.
pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "nichols", version, about = "Rank-3 Nichols algebras of diagonal type in positive characteristic")]
pub struct Cli {
    /// Print a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest number of points explored in an orbit.
    #[arg(long, global = true, default_value_t = Limits::default().max_points)]
    pub max_points: usize,
    /// Largest number of real roots kept at one point.
    #[arg(long, global = true, default_value_t = Limits::default().max_roots)]
    pub max_roots: usize,
    /// Largest absolute root coefficient before the closure gives up.
    #[arg(long, global = true, default_value_t = Limits::default().max_coeff)]
    pub max_coeff: i64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Cartan matrix.
    Cartan { file: PathBuf },
    /// Reflect the Dynkin data at a vertex.
    Reflect {
        file: PathBuf,
        /// Vertex to reflect at, 1-based.
        #[arg(short = 'i', long = "vertex")]
        vertex: usize,
    },
    /// List the points of the Cartan graph and its exchange graph.
    Orbit {
        file: PathBuf,
        /// Also write the exchange graph as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute real roots at every point.
    Roots { file: PathBuf },
    /// Look the input up in the classification tables.
    Classify { file: PathBuf },
    /// Find a point with a good A3, B3 or C3 neighborhood.
    GoodNeighborhood { file: PathBuf },
    /// Check the built-in tables against the engine.
    VerifyTables {
        #[arg(long)]
        p: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Cartan { .. } => "cartan",
            Command::Reflect { .. } => "reflect",
            Command::Orbit { .. } => "orbit",
            Command::Roots { .. } => "roots",
            Command::Classify { .. } => "classify",
            Command::GoodNeighborhood { .. } => "good-neighborhood",
            Command::VerifyTables { .. } => "verify-tables",
        }
    }
}

/// What to print and the exit status.
pub struct Response {
    pub stdout: String,
    pub stderr: String,
    pub exit: u8,
}

fn load(path: &Path) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(Kind::Validation, "IoError", format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

fn execute(cli: &Cli) -> Result<commands::Outcome, CliError> {
    let limits = Limits { max_points: cli.max_points, max_roots: cli.max_roots, max_coeff: cli.max_coeff, ..Limits::default() };
    match &cli.command {
        Command::Cartan { file } => commands::cartan(&load(file)?),
        Command::Reflect { file, vertex } => commands::reflect_at(&load(file)?, *vertex),
        Command::Orbit { file, dot } => {
            let (outcome, graph) = commands::orbit(&load(file)?, &limits)?;
            if let Some(path) = dot {
                std::fs::write(path, graph.exchange_graph().to_dot(&graph))
                    .map_err(|e| CliError::new(Kind::Validation, "IoError", format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(outcome)
        }
        Command::Roots { file } => commands::roots(&load(file)?, &limits),
        Command::Classify { file } => commands::classify_input(&load(file)?, &limits),
        Command::GoodNeighborhood { file } => commands::good_neighborhood(&load(file)?, &limits),
        Command::VerifyTables { p } => commands::verify_tables(*p, &limits),
    }
}

fn envelope(command: &str, status: &str, result: Value, error: Value) -> String {
    let doc = json!({
        "schema_version": JSON_SCHEMA_VERSION,
        "command": command,
        "status": status,
        "result": result,
        "error": error,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Response {
    let name = cli.command.name();
    match execute(cli) {
        Ok(o) => {
            let exit = if o.positive { 0 } else { 1 };
            let stdout = if cli.json { envelope(name, if o.positive { "ok" } else { "negative" }, o.json, Value::Null) } else { o.text };
            Response { stdout, stderr: String::new(), exit }
        }
        Err(e) => {
            let exit = e.kind.exit_code();
            if cli.json {
                Response { stdout: envelope(name, "error", Value::Null, e.to_json()), stderr: String::new(), exit }
            } else {
                Response { stdout: String::new(), stderr: format!("{e}\n"), exit }
            }
        }
    }
}
