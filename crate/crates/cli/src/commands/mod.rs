//! Subcommand implementations.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use runfall_core::ingest;
use runfall_core::model::{DataSet, TargetSet};

pub mod art;
pub mod best;
pub mod ecdf;
pub mod plot;
pub mod run;
pub mod targets;

/// Fallback seed source when `--seed` is absent.
pub const SEED_ENV: &str = "RUNFALL_SEED";

/// Marker for command-line misuse; the caller maps it to exit code 1
/// instead of the data-error exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Resolves the master seed from the flag or the environment; randomized
/// commands refuse to run without one.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| usage(format!("{SEED_ENV} is not a valid 64-bit seed: `{text}`"))),
        Err(_) => Err(usage(format!(
            "missing --seed (or {SEED_ENV} environment variable)"
        ))),
    }
}

/// Parses the `MAX:MIN:COUNT` target-range syntax into a log-spaced set.
pub fn parse_target_range(text: &str) -> Result<TargetSet> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(usage(format!(
            "target range must be MAX:MIN:COUNT, got `{text}`"
        )));
    }
    let max: f64 = parts[0]
        .parse()
        .map_err(|_| usage(format!("invalid target bound `{}`", parts[0])))?;
    let min: f64 = parts[1]
        .parse()
        .map_err(|_| usage(format!("invalid target bound `{}`", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| usage(format!("invalid target count `{}`", parts[2])))?;
    runfall_core::targets::log_targets(max, min, count)
        .map_err(|e| usage(format!("invalid target range `{text}`: {e}")))
}

/// Loads every run log under the given files/directories.
pub fn load_inputs(paths: &[PathBuf], allow_repetitions: bool) -> Result<DataSet> {
    if paths.is_empty() {
        return Err(usage("no --in paths given"));
    }
    let dataset = ingest::load_dataset(paths, allow_repetitions)?;
    if dataset.is_empty() {
        return Err(anyhow!(
            "no .rlog files found under {}",
            paths
                .iter()
                .map(|p| p.display().to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    Ok(dataset)
}

/// Picks the algorithm to operate on: the flag if given, else the sole
/// algorithm present in the data.
pub fn resolve_algorithm(dataset: &DataSet, flag: Option<&str>) -> Result<String> {
    match flag {
        Some(name) => {
            if !dataset.algorithms().iter().any(|a| a == name) {
                return Err(anyhow!("no data for algorithm `{name}`"));
            }
            Ok(name.to_owned())
        }
        None => {
            let algorithms = dataset.algorithms();
            if algorithms.len() == 1 {
                Ok(algorithms.into_iter().next().expect("one"))
            } else {
                Err(usage(format!(
                    "data holds several algorithms ({}); pick one with --algorithm",
                    algorithms.join(", ")
                )))
            }
        }
    }
}

/// Writes to the given file, or to standard output when no path is set.
pub fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
