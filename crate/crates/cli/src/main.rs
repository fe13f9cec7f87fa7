//! `swkb-lab`: tables and plot-ready data from the swkb-core laboratory.
//!
//! Every subcommand writes one table to stdout (CSV with a header row, or
//! one JSON object per line) and short summary lines to stderr. Exit codes
//! are 0 on success, 2 for invalid input and 3 when a numerical method fails.

mod commands;
mod output;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use output::{Format, Table};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numeric(String),
}

impl From<swkb_core::Error> for CliError {
    fn from(e: swkb_core::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "swkb-lab", version, about = "SWKB quantization laboratory")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Absolute and relative quadrature tolerance for SWKB integrals.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Reduced Planck constant for catalog systems and spectra.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub hbar: f64,
    /// Oscillator frequency for catalog systems.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub omega: f64,
    /// Write a run manifest to this path after a successful run.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// List the superpotential families or show one of them.
    Catalog(commands::CatalogArgs),
    /// SWKB integrals at the exact levels of a catalog system.
    Swkb(commands::SwkbArgs),
    /// Reconstruct a superpotential from a spectrum and a shape ansatz.
    Invert(commands::InvertArgs),
    /// Eigenvalues of a piecewise-quadratic oscillator.
    Spectrum(commands::SpectrumArgs),
    /// Exactly solvable (Hermite) levels of a piecewise-quadratic oscillator.
    HermiteStates(commands::HermiteArgs),
    /// Darboux–Crum and Krein–Adler deformations of a piecewise oscillator.
    Darboux(commands::DarbouxArgs),
    /// Wigner function of one eigenstate on a phase-space grid.
    Wigner(commands::WignerArgs),
    /// Re-run a saved manifest.
    Replay {
        path: PathBuf,
    },
}

/// Everything needed to reproduce a run byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub tolerances: Tolerances,
    pub format: Format,
    pub units: Units,
    /// No randomness is involved anywhere, so reruns are identical.
    pub deterministic: bool,
    pub version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub quadrature: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Units {
    pub hbar: f64,
    pub omega: f64,
}

impl RunManifest {
    fn new(global: &Global, command: &Command) -> Result<Self, CliError> {
        let tagged = serde_json::to_value(command).map_err(|e| CliError::Validation(e.to_string()))?;
        let (name, parameters) = match tagged {
            serde_json::Value::Object(m) if m.len() == 1 => m.into_iter().next().expect("one entry"),
            other => (other.as_str().unwrap_or_default().to_string(), serde_json::Value::Null),
        };
        Ok(Self {
            command: name,
            parameters,
            tolerances: Tolerances { quadrature: global.tol },
            format: global.format,
            units: Units { hbar: global.hbar, omega: global.omega },
            deterministic: true,
            version: env!("CARGO_PKG_VERSION").to_string(),
        })
    }

    fn restore(&self) -> Result<(Global, Command), CliError> {
        let mut tagged = serde_json::Map::new();
        tagged.insert(self.command.clone(), self.parameters.clone());
        let command: Command = serde_json::from_value(serde_json::Value::Object(tagged))
            .map_err(|e| CliError::Validation(format!("manifest: {e}")))?;
        let global = Global {
            format: self.format,
            tol: self.tolerances.quadrature,
            hbar: self.units.hbar,
            omega: self.units.omega,
            manifest: None,
        };
        Ok((global, command))
    }
}

fn execute(global: &Global, command: &Command) -> Result<Table, CliError> {
    match command {
        Command::Catalog(a) => commands::catalog(global, a),
        Command::Swkb(a) => commands::swkb(global, a),
        Command::Invert(a) => commands::invert(global, a),
        Command::Spectrum(a) => commands::spectrum(global, a),
        Command::HermiteStates(a) => commands::hermite(global, a),
        Command::Darboux(a) => commands::darboux(global, a),
        Command::Wigner(a) => commands::wigner(global, a),
        Command::Replay { .. } => Err(CliError::Validation("a manifest cannot replay another manifest".into())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (global, command) = match &cli.command {
        Command::Replay { path } => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            let manifest: RunManifest =
                serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
            let (mut g, c) = manifest.restore()?;
            g.manifest = cli.global.manifest.clone();
            (g, c)
        }
        c => (cli.global.clone(), c.clone()),
    };
    if !(global.hbar > 0.0 && global.hbar.is_finite() && global.omega > 0.0 && global.omega.is_finite()) {
        return Err(CliError::Validation("--hbar and --omega must be positive".into()));
    }
    if let Some(t) = global.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Validation(format!("--tol must lie in (0, 1), got {t}")));
        }
    }
    let table = execute(&global, &command)?;
    let bytes = table.render(global.format).map_err(|e| CliError::Numeric(e.to_string()))?;
    let mut err = std::io::stderr().lock();
    for line in &table.notes {
        let _ = writeln!(err, "# {line}");
    }
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(&bytes);
    let _ = out.flush();
    if let Some(path) = &global.manifest {
        let manifest = RunManifest::new(&global, &command)?;
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        std::fs::write(path, text + "\n").map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("swkb-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
