//! Library side of the `orbit-ideals` binary: run configuration, the
//! subcommands as plain functions returning reports, and rendering.
//!
//! Every report embeds the [`RunConfig`] it was produced with and renders
//! either as pretty JSON or as text built from the same fields.

use std::path::PathBuf;

use orbit_ideals::{MembershipMode, Partition};
use serde::{Deserialize, Serialize};
use thiserror::Error;

mod commands;
mod text;

pub use commands::*;

/// Environment variable naming the directory generator files are written to.
pub const WORKDIR_ENV: &str = "ORBIT_IDEALS_WORKDIR";
pub const DEFAULT_MAX_N: usize = 4;
pub const DEFAULT_SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub partition: Option<Partition>,
    /// Ambient matrix size for rank varieties and `dims`.
    pub n: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub mode: MembershipMode,
    pub output: OutputFormat,
    pub max_n: usize,
    #[serde(skip)]
    pub workdir: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            partition: None,
            n: None,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            mode: MembershipMode::Auto,
            output: OutputFormat::Text,
            max_n: DEFAULT_MAX_N,
            workdir: None,
        }
    }
}

impl RunConfig {
    pub fn for_partition(text: &str) -> Result<Self, CliError> {
        Ok(RunConfig {
            partition: Some(parse_partition(text)?),
            ..Self::default()
        })
    }

    pub fn partition(&self) -> Result<&Partition, CliError> {
        self.partition
            .as_ref()
            .ok_or_else(|| CliError::Usage("--partition is required".into()))
    }

    /// Refuses work above the configured matrix size.
    pub fn check_bound(&self, n: usize, estimate: impl FnOnce() -> String) -> Result<(), CliError> {
        if n > self.max_n {
            return Err(CliError::Refused(format!(
                "n = {n} exceeds --max-n {} ({}); rerun with --max-n {n} to proceed",
                self.max_n,
                estimate()
            )));
        }
        Ok(())
    }
}

pub fn parse_partition(text: &str) -> Result<Partition, CliError> {
    text.parse()
        .map_err(|e: orbit_ideals::Error| CliError::Usage(e.to_string()))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Library(#[from] orbit_ideals::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Json(_) => 2,
            CliError::Refused(_) | CliError::Io(_) => 3,
            CliError::Library(orbit_ideals::Error::SamplingFailed(_)) => 1,
            CliError::Library(_) => 2,
        }
    }
}

/// A command result that can be printed and mapped to an exit status.
pub trait Report: Serialize {
    fn text(&self) -> String;

    /// Whether every check matched its expected outcome.
    fn passed(&self) -> bool {
        true
    }

    fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        Ok(match format {
            OutputFormat::Json => serde_json::to_string_pretty(self)? + "\n",
            OutputFormat::Text => self.text(),
        })
    }

    fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}
