//! `runfall best`: compose the artificial best algorithm across archives.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use runfall_core::model::RuntimeTable;
use runfall_core::refbest::{compose_virtual_dataset, select_best};
use runfall_core::runtime::extract_runtimes;

use super::{emit, load_inputs, parse_target_range};
use crate::formats::{write_selection_csv, write_table_csv};

#[derive(Args, Debug)]
pub struct BestArgs {
    /// Run-log files or directories covering all algorithms.
    #[arg(long = "in", value_name = "PATH", required = true)]
    pub inputs: Vec<PathBuf>,

    /// Target precisions as MAX:MIN:COUNT, log-spaced.
    #[arg(long, default_value = "1e2:1e-8:51")]
    pub targets: String,

    /// Restrict to one dimension.
    #[arg(long)]
    pub dim: Option<u32>,

    /// Restrict to one function.
    #[arg(long)]
    pub function: Option<String>,

    /// Renumber colliding instances instead of rejecting them.
    #[arg(long)]
    pub allow_repetitions: bool,

    /// Selection CSV output (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write the composed runtime table for reuse (e.g. `ecdf --table`).
    #[arg(long)]
    pub out_table: Option<PathBuf>,
}

pub fn main(args: BestArgs) -> Result<()> {
    let targets = parse_target_range(&args.targets)?;
    let dataset = load_inputs(&args.inputs, args.allow_repetitions)?;

    let mut tables: BTreeMap<String, RuntimeTable> = BTreeMap::new();
    for algorithm in dataset.algorithms() {
        let mut table = RuntimeTable::new(targets.clone());
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
            table.merge(extract_runtimes(
                &dataset,
                &algorithm,
                &function_id,
                dimension,
                &targets,
            )?)?;
        }
        if table.is_empty() {
            anyhow::bail!("no groups match the filters for algorithm `{algorithm}`");
        }
        tables.insert(algorithm, table);
    }

    let selection = select_best(&tables)?;
    emit(
        args.out.as_deref(),
        &write_selection_csv(&selection, &targets),
    )?;

    if let Some(path) = &args.out_table {
        let composed = compose_virtual_dataset(&selection, &tables)?;
        std::fs::write(path, write_table_csv(&composed))
            .with_context(|| format!("cannot write {}", path.display()))?;
        eprintln!("wrote composed runtime table to {}", path.display());
    }
    Ok(())
}
