//! Verification campaigns over the `ahgraph-core` library, reported as CSV.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::str::FromStr;

use config::RunConfig;
use error::{CliError, CliResult};
use report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    AdsCheck,
    IdentityCheck,
    Mass,
    PenroseReport,
    BoundaryReport,
    MatrixFuzz,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::AdsCheck,
        Command::IdentityCheck,
        Command::Mass,
        Command::PenroseReport,
        Command::BoundaryReport,
        Command::MatrixFuzz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::AdsCheck => "ads-check",
            Command::IdentityCheck => "identity-check",
            Command::Mass => "mass",
            Command::PenroseReport => "penrose-report",
            Command::BoundaryReport => "boundary-report",
            Command::MatrixFuzz => "matrix-fuzz",
        }
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::config(format!("unknown command '{s}'")))
    }
}

pub fn run(command: Command, cfg: &RunConfig) -> CliResult<Report> {
    match command {
        Command::AdsCheck => commands::ads_check::run(cfg),
        Command::IdentityCheck => commands::identity_check::run(cfg),
        Command::Mass => commands::mass::run(cfg),
        Command::PenroseReport => commands::penrose_report::run(cfg),
        Command::BoundaryReport => commands::boundary_report::run(cfg),
        Command::MatrixFuzz => commands::matrix_fuzz::run(cfg),
    }
}
