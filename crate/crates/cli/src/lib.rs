//! Batch front end: load an SFT + potential from JSON (or the fixture
//! catalog), run classification / pressure curves / residual-entropy
//! bounds / annealing, and emit JSON or CSV.
//!
//! Exit codes: 0 resolved, 2 undetermined (semi-decidable semantics),
//! 1 malformed input or processing error.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub mod commands;
pub mod csvfmt;
pub mod json;

use commands::Outcome;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(groundstate_core::Error),
}

impl CliError {
    pub fn from_core(e: groundstate_core::Error) -> CliError {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "input error: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Pressure,
    ResidualUpper,
    Anneal,
    Fixture,
    Boundary,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Interval,
}

/// Certified zero-temperature thermodynamics for subshifts of finite type.
#[derive(Parser, Debug)]
#[command(name = "groundstate", version, about)]
pub struct Args {
    /// Input JSON file with an SFT and a potential.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// What to run.
    #[arg(long, value_enum)]
    pub command: Command,

    /// A fixture from the catalog (intro:a1,a2 | star:n[:base|:perturbed]
    /// | boundary:a1,a2:y:m:eps:tol) used instead of --input.
    #[arg(long)]
    pub fixture: Option<String>,

    /// Precision: reported enclosures have width <= 2^-N (residual upper
    /// bounds excepted; they are labeled semi-computable in the CSV).
    #[arg(long, default_value_t = 30)]
    pub precision: u32,

    /// Arithmetic mode; exact requires all-rational inputs.
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,

    /// Inverse-temperature grid: "b0,b1,..." or "geom:start,ratio,count".
    #[arg(long)]
    pub betas: Option<String>,

    /// Steps of the residual-entropy upper-bound sequence.
    #[arg(long, default_value_t = 12)]
    pub steps: u32,

    /// Marginal depth for Wasserstein diagnostics.
    #[arg(long, default_value_t = 8)]
    pub depth: usize,

    /// Output file (stdout when omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn load_input(args: &Args) -> Result<(groundstate_core::sft::Sft, groundstate_core::potential::Potential), CliError> {
    if let Some(name) = &args.fixture {
        let (sft, phi, _) = commands::fixture_by_name(name)?;
        if args.mode == Mode::Exact && !phi.is_exact() {
            return Err(CliError::Input("exact mode with interval fixture".into()));
        }
        return Ok((sft, phi));
    }
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| CliError::Input("need --input FILE or --fixture NAME".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let parsed: json::InputJson =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad JSON: {e}")))?;
    json::decode_input(&parsed, args.mode == Mode::Exact)
}

fn emit(args: &Args, content: &str) -> Result<(), CliError> {
    let mut text = content.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &args.out {
        Some(path) => fs::write(path, &text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Run the tool; returns the process exit code.
pub fn run(args: &Args) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(args: &Args) -> Result<i32, CliError> {
    match args.command {
        Command::Fixture => {
            let name = args
                .fixture
                .as_ref()
                .ok_or_else(|| CliError::Input("fixture command needs --fixture NAME".into()))?;
            let out = commands::cmd_fixture(name)?;
            emit(args, &out)?;
            Ok(0)
        }
        Command::Boundary => {
            let name = args
                .fixture
                .as_ref()
                .ok_or_else(|| CliError::Input("boundary command needs --fixture boundary:...".into()))?;
            let out = commands::cmd_boundary(name)?;
            emit(args, &out)?;
            Ok(0)
        }
        Command::Classify => {
            let (sft, phi) = load_input(args)?;
            match commands::cmd_classify(&sft, &phi, args.precision)? {
                Outcome::Resolved(json) => {
                    emit(args, &json)?;
                    Ok(0)
                }
                Outcome::Undetermined(json) => {
                    emit(args, &json)?;
                    Ok(2)
                }
            }
        }
        Command::Pressure => {
            let (sft, phi) = load_input(args)?;
            let betas = match &args.betas {
                Some(b) => commands::parse_betas(b)?,
                None => return Err(CliError::Input("pressure needs --betas".into())),
            };
            let csv = commands::cmd_pressure_curve(&sft, &phi, &betas, args.precision)?;
            emit(args, &csv)?;
            Ok(0)
        }
        Command::ResidualUpper => {
            let (sft, phi) = load_input(args)?;
            let csv = commands::cmd_residual_upper(&sft, &phi, args.steps)?;
            emit(args, &csv)?;
            Ok(0)
        }
        Command::Anneal => {
            let (sft, phi) = load_input(args)?;
            let betas = match &args.betas {
                Some(b) => commands::parse_betas(b)?,
                None => commands::default_anneal_schedule(),
            };
            let csv = commands::cmd_anneal(&sft, &phi, &betas, args.precision, args.depth)?;
            emit(args, &csv)?;
            Ok(0)
        }
    }
}
