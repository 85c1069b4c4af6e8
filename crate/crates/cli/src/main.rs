use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ahgraph_cli::config::{Overrides, RunConfig};
use ahgraph_cli::error::CliResult;
use ahgraph_cli::report::fmt_float;
use ahgraph_cli::Command;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ahgraph", version, about = "Curvature and mass checks for asymptotically hyperbolic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// INI file with run parameters.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// CSV destination; standard output when absent.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for the matrix-fuzz corpus.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Dimension of the hyperbolic base.
    #[arg(long, global = true, value_name = "N")]
    n: Option<usize>,
    /// Multiplies every tolerance.
    #[arg(long, global = true, value_name = "X")]
    tol_scale: Option<f64>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Equality case on the AdS Schwarzschild family.
    AdsCheck,
    /// Divergence identity, Stokes and boundary identity residuals.
    IdentityCheck,
    /// Mass vector on the radii ladder.
    Mass,
    /// Mass lower bounds with hypothesis flags.
    PenroseReport,
    /// Boundary estimates on the configured surfaces.
    BoundaryReport,
    /// Random corpus for the matrix inequality.
    MatrixFuzz,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Command {
        match c {
            Cmd::AdsCheck => Command::AdsCheck,
            Cmd::IdentityCheck => Command::IdentityCheck,
            Cmd::Mass => Command::Mass,
            Cmd::PenroseReport => Command::PenroseReport,
            Cmd::BoundaryReport => Command::BoundaryReport,
            Cmd::MatrixFuzz => Command::MatrixFuzz,
        }
    }
}

fn execute(cli: &Cli) -> CliResult<bool> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    cfg.apply(&Overrides {
        n: cli.n,
        seed: cli.seed,
        out: cli.out.clone(),
        tol_scale: cli.tol_scale,
    })?;
    let report = ahgraph_cli::run(cli.command.into(), &cfg)?;
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.write_csv(&mut w)?;
            w.flush()?;
        }
        None => report.write_csv(io::stdout().lock())?,
    }
    for r in report.failures() {
        eprintln!(
            "FAIL {} / {}: residual {} vs tolerance {} {}",
            r.case,
            r.quantity,
            fmt_float(r.residual),
            fmt_float(r.tolerance),
            r.note
        );
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ahgraph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
