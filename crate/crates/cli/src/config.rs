use std::str::FromStr;

use quasigroups::enumerate::{EnumConfig, DEFAULT_CELL_CAP};
use quasigroups::model::DEFAULT_MATERIALIZE_CAP;
use quasigroups::Error;

pub const DEFAULT_WORKERS: usize = 1;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Usage(format!("unknown format {other:?}"))),
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub workers: usize,
    /// Largest `k^n` the enumerator accepts.
    pub cell_cap: usize,
    /// Largest table a composition may be expanded into.
    pub mat_cap: usize,
    pub seed: u64,
    /// `None` lets each subcommand use its natural format.
    pub format: Option<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            workers: DEFAULT_WORKERS,
            cell_cap: DEFAULT_CELL_CAP,
            mat_cap: DEFAULT_MATERIALIZE_CAP,
            seed: DEFAULT_SEED,
            format: None,
        }
    }
}

impl RunConfig {
    pub fn enum_config(&self) -> EnumConfig {
        EnumConfig {
            cell_cap: self.cell_cap,
            workers: self.workers,
            ..EnumConfig::default()
        }
    }

    pub fn format_or(&self, default: OutputFormat) -> OutputFormat {
        self.format.unwrap_or(default)
    }
}
