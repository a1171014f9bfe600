//! `runfall art`: average-runtime table as CSV.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use runfall_core::ecdf::art_rows;
use runfall_core::runtime::extract_runtimes;

use super::{emit, load_inputs, parse_target_range};
use crate::formats::write_art_csv;

#[derive(Args, Debug)]
pub struct ArtArgs {
    /// Run-log files or directories (recursive, *.rlog).
    #[arg(long = "in", value_name = "PATH", required = true)]
    pub inputs: Vec<PathBuf>,

    /// Target precisions as MAX:MIN:COUNT, log-spaced.
    #[arg(long, default_value = "1e2:1e-8:51")]
    pub targets: String,

    /// Restrict to one algorithm.
    #[arg(long)]
    pub algorithm: Option<String>,

    /// Restrict to one function.
    #[arg(long)]
    pub function: Option<String>,

    /// Restrict to one dimension.
    #[arg(long)]
    pub dim: Option<u32>,

    /// Renumber colliding instances instead of rejecting them.
    #[arg(long)]
    pub allow_repetitions: bool,

    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn main(args: ArtArgs) -> Result<()> {
    let targets = parse_target_range(&args.targets)?;
    let dataset = load_inputs(&args.inputs, args.allow_repetitions)?;

    let algorithms: Vec<String> = dataset
        .algorithms()
        .into_iter()
        .filter(|a| args.algorithm.as_deref().is_none_or(|want| want == a))
        .collect();
    if algorithms.is_empty() {
        anyhow::bail!(
            "no data for algorithm `{}`",
            args.algorithm.as_deref().unwrap_or("?")
        );
    }

    let mut rows = Vec::new();
    for algorithm in algorithms {
        for (function_id, dimension) in dataset.group_keys(&algorithm) {
            if args
                .function
                .as_deref()
                .is_some_and(|want| want != function_id)
            {
                continue;
            }
            if args.dim.is_some_and(|want| want != dimension) {
                continue;
            }
            let table = extract_runtimes(&dataset, &algorithm, &function_id, dimension, &targets)?;
            for row in art_rows(&table) {
                rows.push((algorithm.clone(), row));
            }
        }
    }
    if rows.is_empty() {
        anyhow::bail!("no (function, dimension) groups match the filters");
    }
    emit(args.out.as_deref(), &write_art_csv(&rows))
}
