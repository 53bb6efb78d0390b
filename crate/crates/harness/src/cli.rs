//! Argument parsing and subcommand dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use revunc::sampling::{self, qutrit_instance};
use revunc::search::{minimize_gap, SearchConfig};
use revunc::{InstanceSpec, Observable, Provenance, Relation, State, Tolerances};

use crate::demo::run_demo;
use crate::error::{exit, HarnessError, Result};
use crate::extremal::ExtremalReport;
use crate::instance::{load_instance, write_instance};
use crate::sweep::{csv_string, json_string, render_summary, run_sweep, SweepConfig};
use crate::verify::{render_table, verify};

#[derive(Debug, Parser)]
#[command(name = "revunc", version, about = "Verify and stress-test reverse uncertainty relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every relation on an instance file.
    Verify(VerifyArgs),
    /// Monte-Carlo sweep over generated instances.
    Sweep(SweepArgs),
    /// Minimize a reverse relation's gap over pure states.
    Extremal(ExtremalArgs),
    /// Walk through the uncorrelated and eigenstate degenerate cases.
    Demo,
    /// Write an instance file.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Write the machine-readable report here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = revunc::tolerance::HOLDS)]
    pub tolerance: f64,
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated relation names (default: all).
    #[arg(long, value_delimiter = ',')]
    pub relations: Vec<String>,
    /// Comma-separated provenances (default: HAAR_GUE,EIGENSTATE,ORTHO_DEVIATION).
    #[arg(long, value_delimiter = ',')]
    pub provenance: Vec<String>,
    #[arg(long, default_value_t = revunc::tolerance::HOLDS)]
    pub tolerance: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format; csv writes one row per trial and relation, json the aggregate report.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct ExtremalArgs {
    #[arg(long)]
    pub relation: String,
    /// Take A and B from an instance file.
    #[arg(long, conflicts_with_all = ["paulis", "random_dim"])]
    pub instance: Option<PathBuf>,
    /// Two Pauli operators, e.g. `X,Z`.
    #[arg(long, value_delimiter = ',', conflicts_with = "random_dim")]
    pub paulis: Vec<String>,
    /// Random GUE observables of this dimension.
    #[arg(long)]
    pub random_dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub instance_seed: u64,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_iterations: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub convergence_tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// The uncorrelated qutrit instance.
    Qutrit,
    /// A = X, B = Z, phi = |0>.
    XzZero,
    /// A = Z, B = Y, phi = |+>.
    ZyPlus,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum, conflicts_with = "provenance")]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub provenance: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

fn parse_list<T: std::str::FromStr<Err = revunc::Error>>(items: &[String]) -> Result<Vec<T>> {
    items
        .iter()
        .map(|s| s.parse().map_err(|e: revunc::Error| HarnessError::Config(e.to_string())))
        .collect()
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let instance = load_instance(&args.path)?;
    let tolerances = Tolerances::with_holds(args.tolerance);
    let report = verify(&instance, tolerances)?;
    if !args.quiet {
        let _ = write!(out, "{}", render_table(&report, tolerances.equality));
    }
    if let Some(path) = &args.json {
        write_file(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    Ok(if report.all_hold { exit::OK } else { exit::VIOLATION })
}

pub fn sweep_config(args: &SweepArgs) -> Result<SweepConfig> {
    let defaults = SweepConfig::default();
    Ok(SweepConfig {
        dims: args.dims.clone(),
        trials: args.trials,
        seed: args.seed,
        relations: if args.relations.is_empty() {
            defaults.relations
        } else {
            parse_list(&args.relations)?
        },
        provenances: if args.provenance.is_empty() {
            defaults.provenances
        } else {
            parse_list(&args.provenance)?
        },
        tolerances: Tolerances::with_holds(args.tolerance),
        threads: args.threads,
    })
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<u8> {
    let config = sweep_config(args)?;
    let swept = run_sweep(&config)?;
    let format = args.format.unwrap_or(Format::Csv);
    let rendered = || match format {
        Format::Csv => csv_string(&swept.rows),
        Format::Json => json_string(&swept.report),
    };
    match (&args.output, args.format) {
        (Some(path), _) => write_file(path, &rendered()?)?,
        (None, Some(_)) => {
            let _ = write!(out, "{}", rendered()?);
        }
        (None, None) => {}
    }
    if !args.quiet && (args.output.is_some() || args.format.is_none()) {
        let _ = write!(out, "{}", render_summary(&swept.report));
    }
    Ok(if swept.report.total_violations == 0 { exit::OK } else { exit::VIOLATION })
}

fn cmd_extremal(args: &ExtremalArgs, out: &mut dyn Write) -> Result<u8> {
    let relation: Relation = args.relation.parse()?;
    if !relation.is_reverse_bound() {
        return Err(HarnessError::Config(format!(
            "{relation} cannot be minimized: only the upper bounds REV_COV, REV_PROD and REV_DW have a gap to close \
             (ROBERTSON is a lower bound and the vector relations take no observables)"
        )));
    }
    let (a, b) = if let Some(path) = &args.instance {
        let inst = load_instance(path)?;
        (inst.spec.a, inst.spec.b)
    } else if !args.paulis.is_empty() {
        if args.paulis.len() != 2 {
            return Err(HarnessError::Config(format!(
                "--paulis takes exactly two names (e.g. X,Z), got {}",
                args.paulis.len()
            )));
        }
        (Observable::pauli(&args.paulis[0])?, Observable::pauli(&args.paulis[1])?)
    } else if let Some(dim) = args.random_dim {
        let spec = sampling::haar_gue_instance(dim, args.instance_seed)?;
        (spec.a, spec.b)
    } else {
        return Err(HarnessError::Config("give one of --instance, --paulis or --random-dim".into()));
    };
    let config = SearchConfig {
        relation,
        max_iterations: args.max_iterations,
        restarts: args.restarts,
        convergence_tol: args.convergence_tol,
        seed: args.seed,
        record_trace: args.trace,
    };
    config.validate()?;
    let result = minimize_gap(&a, &b, &config)?;
    let report = ExtremalReport::new(relation, &result);
    let _ = write!(out, "{}", report.render());
    if let Some(path) = &args.output {
        write_file(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    // A gap below the holds tolerance would mean the search crossed the bound.
    if result.defined && result.best_gap < -revunc::tolerance::HOLDS {
        return Ok(exit::VIOLATION);
    }
    Ok(exit::OK)
}

fn cmd_generate(args: &GenerateArgs) -> Result<u8> {
    let spec = match (args.preset, &args.provenance) {
        (Some(Preset::Qutrit), _) => qutrit_instance(),
        (Some(Preset::XzZero), _) => InstanceSpec::explicit(Observable::pauli_x(), Observable::pauli_z(), State::basis(2, 0)?)?,
        (Some(Preset::ZyPlus), _) => InstanceSpec::explicit(Observable::pauli_z(), Observable::pauli_y(), State::plus())?,
        (None, Some(p)) => {
            let p: Provenance = p.parse()?;
            InstanceSpec::regenerate(p, args.dim, args.seed)?
        }
        (None, None) => return Err(HarnessError::Config("give --preset or --provenance".into())),
    };
    write_instance(&args.output, &spec)?;
    Ok(exit::OK)
}

/// Run a parsed command, printing to `out` and errors to `err`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Extremal(a) => cmd_extremal(a, out),
        Command::Demo => run_demo().map(|d| {
            let _ = write!(out, "{}", d.text);
            exit::OK
        }),
        Command::Generate(a) => cmd_generate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
