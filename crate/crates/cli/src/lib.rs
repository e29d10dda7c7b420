//! Command-line workbench around the counterpoint engine: polarity and
//! dichotomy derivation, projection/successor queries with an optional
//! brute-force oracle cross-check, composition validation, the
//! rule-comparison experiment, and a versioned projection-table cache.
//!
//! Exit codes: 0 success, 1 input error, 2 domain verdict (not strong,
//! rejected steps, dissonant downbeat), 3 oracle mismatch.

use std::fmt;

use counterpoint_core::dichotomy::{Dichotomy, NotStrongError, StrongDichotomy};
use counterpoint_core::ring::Modulus;

pub mod args;
pub mod cache;
pub mod commands;
pub mod compose;
pub mod report;

pub use args::{Cli, Command};
pub use commands::{execute, Outcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unusable input: exit 1.
    Input(String),
    /// Well-formed input with a negative domain verdict: exit 2.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Validated run configuration shared by every command.
#[derive(Clone, Debug)]
pub struct RunConfig {
    modulus: Modulus,
    consonances: Vec<i64>,
}

impl RunConfig {
    pub fn from_parts(modulus: u32, consonances: Vec<i64>) -> Result<Self, CliError> {
        let modulus = Modulus::new(modulus).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(RunConfig {
            modulus,
            consonances,
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dichotomy(&self) -> Result<Dichotomy, CliError> {
        Dichotomy::new(self.modulus, &self.consonances).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn strong_dichotomy(&self) -> Result<StrongDichotomy, CliError> {
        let base = self.dichotomy()?;
        StrongDichotomy::from_dichotomy(base).map_err(|e| match &e {
            NotStrongError::NoPolarity => CliError::Domain(format!("not a strong dichotomy: {e}")),
            NotStrongError::Multiple(maps) => {
                let listed = maps
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                CliError::Domain(format!("not a strong dichotomy: {e}: {listed}"))
            }
        })
    }

    pub fn config_record(&self) -> Result<report::ConfigRecord, CliError> {
        let d = self.dichotomy()?;
        Ok(report::ConfigRecord {
            modulus: self.modulus.get(),
            consonances: d.consonances().iter().map(|r| r.value()).collect(),
            params: Default::default(),
        })
    }
}
