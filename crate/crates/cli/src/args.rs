use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(name = "imcalc", version, about = "Exact checks for Lie algebroid IM structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the candidate in a problem document and print a report.
    Verify(VerifyArgs),
}

#[derive(clap::Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Problem document (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Degree of the candidate; in axioms mode, also check both prolongations of this order.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Run the theorem oracles next to the direct checks.
    #[arg(long, value_enum)]
    pub oracle: Option<Switch>,
    /// JSON array of sample points for the Dirac checks.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub report: Format,
}

#[derive(ValueEnum, Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    ImForm,
    Multivector,
    Weil,
    Axioms,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::ImForm => "im-form",
            Mode::Multivector => "multivector",
            Mode::Weil => "weil",
            Mode::Axioms => "axioms",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Switch {
    On,
    Off,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}
