//! Front end for `brauer-core`: argument handling, caching and report
//! rendering. The binary is a thin wrapper around [`run`].

mod cache;
mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;

use thiserror::Error;

pub use cache::Cache;
pub use commands::run;
pub use config::{parse_group, parse_zeros, Bounds, Cli, Command, Format, RunConfig, DEFAULT_BUDGET};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BOUND_EXCEEDED: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] brauer_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use brauer_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_VERIFICATION_FAILED,
            CliError::Core(e) => match e {
                E::GroupTooLarge { .. } | E::TooLarge { .. } | E::BudgetExceeded { .. } => EXIT_BOUND_EXCEEDED,
                E::Parse(_)
                | E::NotPrime(_)
                | E::NotDivisible { .. }
                | E::EmptyGroup
                | E::MalformedTable(_)
                | E::NotLatin { .. }
                | E::NoIdentity
                | E::NoInverse(_)
                | E::NotAssociative(_)
                | E::IdentityPairErased(..)
                | E::CancellationFailed(_)
                | E::BadElement(_) => EXIT_USAGE,
                _ => EXIT_VERIFICATION_FAILED,
            },
        }
    }
}

/// Rendered output of a successful run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub out: Option<PathBuf>,
    /// False when a check reported by the command failed.
    pub passed: bool,
    pub cache_hit: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILED
        }
    }

    /// Writes the output to `--out` or stdout.
    pub fn emit(&self) -> Result<(), CliError> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, &self.output).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(self.output.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }
}
