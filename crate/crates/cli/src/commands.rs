//! Argument definitions and dispatch for `qgcount`.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use quasigroups::bounds::{bounds_report, BoundsReport};
use quasigroups::census4::{census, q4_recurrence, RecurrenceRow};
use quasigroups::constructions::{big_psi_from, idempotent_quasigroup, interleaved_group, psi};
use quasigroups::enumerate::{count_quasigroups, Mode, DEFAULT_CELL_CAP};
use quasigroups::model::DEFAULT_MATERIALIZE_CAP;
use quasigroups::trades::{
    disjoint_family, find_components, switch_family, Component, FamilyReport, Strategy,
};
use quasigroups::{Error, Hypercube};

use crate::config::{OutputFormat, RunConfig, DEFAULT_SEED};
use crate::verify::{run_all, Fixtures, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "qgcount",
    version,
    about = "Count, construct and switch n-ary quasigroups"
)]
pub struct Cli {
    /// Worker threads for counting.
    #[arg(long, global = true, env = "QGCOUNT_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Largest k^n accepted by the enumerator.
    #[arg(long, global = true, default_value_t = DEFAULT_CELL_CAP)]
    pub cell_cap: usize,
    /// Largest table a composed quasigroup may be expanded into.
    #[arg(long, global = true, default_value_t = DEFAULT_MATERIALIZE_CAP)]
    pub mat_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of n-ary quasigroups (or loops) of order k, by exhaustive search.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Count loops with identity 0 instead.
        #[arg(long)]
        loops: bool,
    },
    /// Numbers of n-ary loops and quasigroups of order 4 from the recurrence.
    Recur4 {
        #[arg(long)]
        max_n: usize,
        /// Include every intermediate column.
        #[arg(long)]
        intermediates: bool,
    },
    /// Classify all n-ary loops of order 4 (n = 3 or 4).
    Census {
        #[arg(long)]
        n: usize,
    },
    /// Build a quasigroup table.
    Construct {
        #[command(subcommand)]
        what: Construction,
    },
    /// Minimal {a,b}-components of a table.
    Components {
        #[arg(long)]
        input: PathBuf,
        /// Two symbols, e.g. `0,1`.
        #[arg(long)]
        pair: String,
    },
    /// Switch a subset of a disjoint component family.
    Switch {
        #[arg(long)]
        input: PathBuf,
        /// A family report or a JSON list of components.
        #[arg(long)]
        family: PathBuf,
        /// One `0`/`1` per family member.
        #[arg(long)]
        mask: String,
    },
    /// A family of pairwise disjoint components.
    Family {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "pair_partition")]
        strategy: String,
    },
    /// Closed-form bounds; `--grid` sweeps ranges such as `--n 2..4 --k 5..9`.
    Bounds {
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
        #[arg(long)]
        grid: bool,
    },
    /// Run the full reproduction suite.
    VerifyPaper {
        /// `slow` leaves out the quaternary census and the order-5 count.
        #[arg(long)]
        skip: Option<String>,
        /// Directory holding phi4.json, psi9.json and q4_values.json.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Idempotent binary quasigroup of order m >= 3.
    Idempotent {
        #[arg(long)]
        m: usize,
    },
    /// The binary quasigroup of order 2m+1 built from an idempotent one.
    Psi {
        #[arg(long)]
        m: usize,
        /// Idempotent order-m table to start from.
        #[arg(long)]
        phi: Option<PathBuf>,
    },
    /// The n-ary composition tower of psi, expanded into a table.
    BigPsi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        phi: Option<PathBuf>,
    },
    /// Even-order table with (k/2)^n disjoint box components.
    Interleaved {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

/// Failure of a subcommand, mapped onto the exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Usage(_) | Error::Json(_)) | CliError::Io(_) => 2,
            CliError::Core(Error::Resource { .. }) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => f.write_str(e),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(e.into())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Core(Error::Usage(msg.into())))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_table(path: &Path) -> Result<Hypercube, CliError> {
    Ok(Hypercube::from_json(&read(path)?)?)
}

fn json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn json_pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn parse_pair(text: &str) -> Result<(u8, u8), CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok((a, b)),
            _ => usage(format!("bad pair {text:?}")),
        },
        _ => usage(format!(
            "a pair is two symbols separated by a comma, got {text:?}"
        )),
    }
}

/// `a` or the inclusive range `a..b`.
fn parse_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || usage(format!("expected a number or a range a..b, got {text:?}"));
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.parse(), hi.trim_start_matches('=').parse()),
        None => (text.parse(), text.parse()),
    };
    match (lo, hi) {
        (Ok(lo), Ok(hi)) if lo <= hi => Ok(lo..=hi),
        _ => bad(),
    }
}

fn parse_mask(text: &str) -> Result<Vec<bool>, CliError> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => usage(format!("mask characters must be 0 or 1, got {other:?}")),
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FamilyFile {
    Report(FamilyReport),
    List(Vec<Component>),
}

#[derive(Serialize)]
struct CountRecord {
    n: usize,
    k: usize,
    loops: bool,
    #[serde(with = "quasigroups::decimal")]
    count: quasigroups::BigUint,
}

#[derive(Serialize)]
struct ValueRow<'a> {
    n: usize,
    #[serde(with = "quasigroups::decimal")]
    loops: &'a quasigroups::BigUint,
    #[serde(with = "quasigroups::decimal")]
    quasigroups: &'a quasigroups::BigUint,
}

fn recur4_output(
    rows: &[RecurrenceRow],
    intermediates: bool,
    format: OutputFormat,
) -> Result<String, CliError> {
    if format == OutputFormat::Json {
        return if intermediates {
            json_pretty(&rows)
        } else {
            let short: Vec<ValueRow> = rows
                .iter()
                .map(|r| ValueRow {
                    n: r.n,
                    loops: &r.v,
                    quasigroups: &r.q,
                })
                .collect();
            json_pretty(&short)
        };
    }
    let mut text = String::new();
    if intermediates {
        text.push_str(RecurrenceRow::CSV_HEADER);
        text.push('\n');
        for r in rows {
            text.push_str(&r.csv_line());
            text.push('\n');
        }
    } else {
        text.push_str("n,loops,quasigroups\n");
        for r in rows {
            text.push_str(&format!("{},{},{}\n", r.n, r.v, r.q));
        }
    }
    Ok(text)
}

fn bounds_output(n: &str, k: &str, grid: bool, cfg: &RunConfig) -> Result<String, CliError> {
    let (ns, ks) = (parse_range(n)?, parse_range(k)?);
    if !grid {
        if ns.start() != ns.end() || ks.start() != ks.end() {
            return usage("ranges need --grid");
        }
        let report = bounds_report(*ns.start(), *ks.start(), cfg.mat_cap)?;
        return match cfg.format_or(OutputFormat::Json) {
            OutputFormat::Json => json_pretty(&report),
            _ => Ok(format!(
                "{}\n{}\n",
                BoundsReport::CSV_HEADER,
                report.csv_line()
            )),
        };
    }
    let mut reports = Vec::new();
    for k in ks {
        for n in ns.clone() {
            reports.push(bounds_report(n, k, cfg.mat_cap)?);
        }
    }
    match cfg.format_or(OutputFormat::Csv) {
        OutputFormat::Json => json_pretty(&reports),
        _ => {
            let mut text = format!("{}\n", BoundsReport::CSV_HEADER);
            for r in &reports {
                text.push_str(&r.csv_line());
                text.push('\n');
            }
            Ok(text)
        }
    }
}

fn construct(what: &Construction, cfg: &RunConfig) -> Result<Hypercube, CliError> {
    let phi = |path: &Option<PathBuf>| -> Result<Option<Hypercube>, CliError> {
        path.as_deref().map(read_table).transpose()
    };
    Ok(match what {
        Construction::Idempotent { m } => idempotent_quasigroup(*m)?,
        Construction::Psi { m, phi: p } => psi(*m, phi(p)?.as_ref())?,
        Construction::BigPsi { n, m, phi: p } => {
            let table = Arc::new(psi(*m, phi(p)?.as_ref())?);
            big_psi_from(*n, table)?.materialize(cfg.mat_cap)?
        }
        Construction::Interleaved { n, k } => interleaved_group(*n, *k, cfg.mat_cap)?,
    })
}

/// Runs one command and returns the text to emit with the exit code.
pub fn execute(command: &Command, cfg: &RunConfig) -> Result<(String, u8), CliError> {
    let text = match command {
        Command::Count { n, k, loops } => {
            let mode = if *loops { Mode::Loops } else { Mode::All };
            let count = count_quasigroups(*n, *k, mode, &cfg.enum_config())?;
            match cfg.format_or(OutputFormat::Text) {
                OutputFormat::Json => json_line(&CountRecord {
                    n: *n,
                    k: *k,
                    loops: *loops,
                    count,
                })?,
                _ => format!("{count}\n"),
            }
        }
        Command::Recur4 {
            max_n,
            intermediates,
        } => {
            let rows = q4_recurrence(*max_n)?;
            recur4_output(&rows, *intermediates, cfg.format_or(OutputFormat::Csv))?
        }
        Command::Census { n } => json_pretty(&census(*n)?)?,
        Command::Construct { what } => json_line(&construct(what, cfg)?)?,
        Command::Components { input, pair } => {
            let f = read_table(input)?;
            let (a, b) = parse_pair(pair)?;
            json_pretty(&find_components(&f, a, b)?)?
        }
        Command::Switch {
            input,
            family,
            mask,
        } => {
            let f = read_table(input)?;
            let components = match serde_json::from_str::<FamilyFile>(&read(family)?)? {
                FamilyFile::Report(r) => r.components,
                FamilyFile::List(l) => l,
            };
            json_line(&switch_family(&f, &components, &parse_mask(mask)?)?)?
        }
        Command::Family { input, strategy } => {
            let f = read_table(input)?;
            let strategy: Strategy = strategy.parse()?;
            json_pretty(&disjoint_family(&f, strategy)?)?
        }
        Command::Bounds { n, k, grid } => bounds_output(n, k, *grid, cfg)?,
        Command::VerifyPaper { skip, fixtures } => {
            let skip_slow = match skip.as_deref() {
                None => false,
                Some("slow") => true,
                Some(other) => return usage(format!("--skip accepts only `slow`, got {other:?}")),
            };
            let fixtures = match fixtures {
                Some(dir) => Fixtures::load(dir).map_err(CliError::Io)?,
                None => Fixtures::embedded(),
            };
            let opts = VerifyOptions {
                config: cfg.clone(),
                skip_slow,
                fixtures,
            };
            let outcomes = run_all(&opts);
            let mut text = String::new();
            for o in &outcomes {
                text.push_str(&o.to_string());
                text.push('\n');
            }
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            text.push_str(&format!(
                "{} of {} criteria passed\n",
                outcomes.len() - failed,
                outcomes.len()
            ));
            return Ok((text, if failed == 0 { 0 } else { 1 }));
        }
    };
    Ok((text, 0))
}

/// Validates the global flags and runs the command, writing to `--output` or
/// `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<u8, CliError> {
    if cli.workers == 0 || cli.cell_cap == 0 || cli.mat_cap == 0 {
        return usage("--workers, --cell-cap and --mat-cap must be at least 1");
    }
    let cfg = RunConfig {
        workers: cli.workers,
        cell_cap: cli.cell_cap,
        mat_cap: cli.mat_cap,
        seed: cli.seed,
        format: cli.format.map(Into::into),
    };
    let (text, code) = execute(&cli.command, &cfg)?;
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(io)?,
        None => stdout.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_pairs() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("2..5").unwrap(), 2..=5);
        assert_eq!(parse_range("2..=5").unwrap(), 2..=5);
        assert!(parse_range("5..2").is_err());
        assert_eq!(parse_pair("0, 1").unwrap(), (0, 1));
        assert!(parse_pair("0").is_err());
        assert_eq!(parse_mask("0110").unwrap(), vec![false, true, true, false]);
        assert!(parse_mask("012").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(Error::Usage("x".into())).exit_code(), 2);
        let r = Error::Resource {
            what: "cells",
            needed: 2,
            cap: 1,
        };
        assert_eq!(CliError::Core(r).exit_code(), 3);
        assert_eq!(CliError::Core(Error::Invariant("x".into())).exit_code(), 1);
    }

    #[test]
    fn recurrence_csv() {
        let rows = q4_recurrence(3).unwrap();
        let text = recur4_output(&rows, false, OutputFormat::Csv).unwrap();
        assert_eq!(text, "n,loops,quasigroups\n1,1,24\n2,4,576\n3,64,55296\n");
    }
}
