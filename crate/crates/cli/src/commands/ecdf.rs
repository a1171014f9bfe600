//! `runfall ecdf`: aggregate empirical runtime distribution as CSV.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;

use runfall_core::ecdf::{scope_table, table_ecdf, AggregationScope};
use runfall_core::model::RuntimeTable;

use super::{emit, load_inputs, parse_target_range, resolve_algorithm, resolve_seed, usage};
use crate::formats::{write_curve_csv, CurveMeta};
use crate::svg::XUnit;

#[derive(Args, Debug)]
pub struct EcdfArgs {
    /// Run-log files or directories (alternative to --table).
    #[arg(long = "in", value_name = "PATH")]
    pub inputs: Vec<PathBuf>,

    /// A runtime-table CSV (for example the composed output of `best`)
    /// to aggregate instead of run logs.
    #[arg(long)]
    pub table: Option<PathBuf>,

    /// Algorithm to aggregate (defaults to the only one present).
    #[arg(long)]
    pub algorithm: Option<String>,

    /// Dimension to aggregate; runtimes from different dimensions are
    /// never pooled, so exactly one is required.
    #[arg(long = "dim")]
    pub dims: Vec<u32>,

    /// Functions to aggregate: `all` or a comma list (default: all).
    #[arg(long)]
    pub functions: Option<String>,

    /// Target precisions as MAX:MIN:COUNT, log-spaced
    /// (default: 1e2:1e-8:51; with --table, targets come from the file).
    #[arg(long)]
    pub targets: Option<String>,

    /// Simulated restart samples per (function, target) pair.
    #[arg(long, default_value_t = runfall_core::runtime::DEFAULT_BOOTSTRAPS)]
    pub bootstraps: usize,

    /// Master seed (falls back to RUNFALL_SEED).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Emit runtimes divided by the dimension.
    #[arg(long)]
    pub per_dimension: bool,

    /// Renumber colliding instances instead of rejecting them.
    #[arg(long)]
    pub allow_repetitions: bool,

    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn single_dimension(dims: &[u32]) -> Result<u32> {
    if dims.len() != 1 {
        return Err(usage(format!(
            "runtimes are never aggregated over dimension; pass exactly one --dim (got {})",
            if dims.is_empty() {
                "none".to_owned()
            } else {
                format!("{dims:?}")
            }
        )));
    }
    Ok(dims[0])
}

fn restrict_to_dimension(table: &RuntimeTable, dimension: u32) -> Result<RuntimeTable> {
    let mut out = RuntimeTable::new(table.targets().clone());
    for (key, entry) in table.entries() {
        if key.dimension == dimension {
            out.insert(key.clone(), entry.clone())?;
        }
    }
    if out.is_empty() {
        anyhow::bail!("table holds no entries for dimension {dimension}");
    }
    Ok(out)
}

pub fn main(args: EcdfArgs) -> Result<()> {
    let seed = resolve_seed(args.seed)?;
    if args.bootstraps == 0 {
        return Err(usage("--bootstraps must be at least 1"));
    }

    let (table, algorithm, functions_text) = if let Some(table_path) = &args.table {
        if !args.inputs.is_empty() {
            return Err(usage("pass either --in or --table, not both"));
        }
        if args.targets.is_some() || args.functions.is_some() {
            return Err(usage(
                "--targets and --functions do not apply to --table input; the table fixes both",
            ));
        }
        let text = std::fs::read_to_string(table_path)
            .with_context(|| format!("cannot read {}", table_path.display()))?;
        let mut table = crate::formats::parse_table_csv(&text)?;
        if !args.dims.is_empty() {
            table = restrict_to_dimension(&table, single_dimension(&args.dims)?)?;
        }
        let label = args.algorithm.clone().unwrap_or_else(|| "best".to_owned());
        (table, label, "table".to_owned())
    } else {
        let dimension = single_dimension(&args.dims)?;
        let targets = parse_target_range(args.targets.as_deref().unwrap_or("1e2:1e-8:51"))?;
        let dataset = load_inputs(&args.inputs, args.allow_repetitions)?;
        let algorithm = resolve_algorithm(&dataset, args.algorithm.as_deref())?;
        let functions_text = args.functions.as_deref().unwrap_or("all").trim().to_owned();
        let functions = match functions_text.as_str() {
            "all" => None,
            list => Some(
                list.split(',')
                    .map(|f| f.trim().to_owned())
                    .collect::<Vec<_>>(),
            ),
        };
        let scope = AggregationScope::new(&algorithm, &[dimension], functions)?;
        let table = scope_table(&dataset, &scope, &targets)?;
        (table, algorithm, functions_text)
    };

    let dimension = table.dimensions()[0];
    let mut curve = table_ecdf(&table, args.bootstraps, seed)?;
    let x_unit = if args.per_dimension {
        curve = curve.scale_x(1.0 / f64::from(dimension))?;
        XUnit::EvalsPerDimension
    } else {
        XUnit::Evals
    };

    let meta = CurveMeta {
        label: format!("{algorithm}-d{dimension}"),
        algorithm,
        dimension,
        functions: functions_text,
        n_targets: table.targets().len(),
        bootstraps: args.bootstraps,
        seed,
        x_unit,
    };
    emit(args.out.as_deref(), &write_curve_csv(&meta, &curve))
}
