//! `htgeom`: command-line harness for Holmes-Thompson Santalo experiments.
//!
//! Every command writes one JSON report (to `--out` or stdout). Exit codes:
//! 0 ok, 2 input error, 3 solver did not converge, 4 a check failed.

mod commands;
mod input;
mod report;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use htgeom::Resolution;

use input::{CliError, CliResult, EXIT_CHECK, EXIT_SOLVER};
use report::Report;

#[derive(Parser)]
#[command(name = "htgeom", version, about = "Holmes-Thompson areas and Santalo points of convex bodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Nodes on the unit circle for planar boundary integrals.
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    /// Icosphere subdivision level for integrals over the 2-sphere.
    #[arg(long, default_value_t = 3)]
    pub sphere_level: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override a named tolerance, e.g. `--tol first_variation=1e-3`.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include wall-clock runtime in the report (makes it non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

impl Common {
    pub fn res(&self) -> CliResult<Resolution> {
        if self.resolution < 16 || self.sphere_level > 7 {
            return Err(CliError::input("--resolution must be >= 16 and --sphere-level <= 7"));
        }
        Ok(Resolution::new(self.resolution, self.sphere_level))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimize x -> A_{K-x}(∂B) (or |(K-x)°| with `--b euclid-classical`).
    Santalo {
        /// Body spec: inline JSON or a path.
        #[arg(long)]
        k: String,
        /// Body spec, or `euclid-classical` for the classical Santalo functional.
        #[arg(long)]
        b: String,
        /// Write the solver trace as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the centroid formula for the first variation with finite differences.
    FirstVariationCheck {
        #[arg(long)]
        k: String,
        /// Smooth body spec.
        #[arg(long)]
        b: String,
        /// Direction as comma-separated coordinates; repeatable. Default: ±e_i.
        #[arg(long = "v", allow_hyphen_values = true)]
        directions: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized property suites.
    Checks {
        /// Random bodies per suite.
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Restrict to a suite; repeatable.
        #[arg(long = "suite")]
        suites: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The square/rhombus pair whose functional is flat along a segment.
    NonuniqueDemo {
        #[arg(long, default_value_t = 0.2)]
        eps0: f64,
        /// Write the objective samples along the segment as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Holmes-Thompson area A_B(∂K).
    HtArea {
        #[arg(long)]
        k: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Isoperimetric ratio A_K(∂B)^n / vol_K(B)^{n-1} against its lower bound.
    IsoperimetricCheck {
        #[arg(long)]
        k: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Blaschke normal residuals and the L identity at random boundary points.
    EquiaffineCheck {
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 20)]
        nodes: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// A finished command: its report and whether the solver gave up.
pub struct Outcome {
    pub report: Report,
    pub solver_failed: bool,
}

fn dispatch(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Santalo { k, b, csv, common } => commands::santalo(k, b, csv.as_deref(), common),
        Command::FirstVariationCheck { k, b, directions, common } => commands::first_variation(k, b, directions, common),
        Command::Checks { count, suites, common } => commands::checks(*count, suites, common),
        Command::NonuniqueDemo { eps0, csv, common } => commands::nonunique(*eps0, csv.as_deref(), common),
        Command::HtArea { k, b, common } => commands::ht_area(k, b, common),
        Command::IsoperimetricCheck { k, b, common } => commands::isoperimetric(k, b, common),
        Command::EquiaffineCheck { b, nodes, common } => commands::equiaffine(b, *nodes, common),
    }
}

fn common(command: &Command) -> &Common {
    match command {
        Command::Santalo { common, .. }
        | Command::FirstVariationCheck { common, .. }
        | Command::Checks { common, .. }
        | Command::NonuniqueDemo { common, .. }
        | Command::HtArea { common, .. }
        | Command::IsoperimetricCheck { common, .. }
        | Command::EquiaffineCheck { common, .. } => common,
    }
}

fn run(cli: &Cli) -> CliResult<i32> {
    let start = Instant::now();
    let mut outcome = dispatch(&cli.command)?;
    let common = common(&cli.command);
    if common.timing {
        outcome.report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let mut text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
    text.push('\n');
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    for c in outcome.report.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} = {:e} (expected {:e}, tol {:e})", c.name, c.computed, c.expected, c.tolerance);
    }
    Ok(if outcome.solver_failed {
        EXIT_SOLVER
    } else if !outcome.report.pass {
        EXIT_CHECK
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
