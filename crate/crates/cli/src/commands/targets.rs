//! `runfall targets`: runlength-based target derivation from reference data.

use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use runfall_core::runtime::extract_runtimes;
use runfall_core::targets::{
    default_expensive_budgets, runlength_targets, BudgetSet, BudgetVariant,
};

use super::{emit, load_inputs, parse_target_range, resolve_algorithm, usage};
use crate::formats::write_targets_csv;

#[derive(Args, Debug)]
pub struct TargetsArgs {
    /// Run-log files or directories holding the reference data.
    #[arg(long = "in", value_name = "PATH", required = true)]
    pub inputs: Vec<PathBuf>,

    /// Reference algorithm (defaults to the only one present).
    #[arg(long)]
    pub algorithm: Option<String>,

    /// Function the targets are derived for.
    #[arg(long)]
    pub function: String,

    /// Dimension the targets are derived for.
    #[arg(long)]
    pub dim: u32,

    /// `five`, `thirtyone`, or a comma list of increasing budgets.
    #[arg(long, default_value = "five")]
    pub budgets: String,

    /// Candidate precision grid as MAX:MIN:COUNT.
    #[arg(long, default_value = "1e2:1e-8:51")]
    pub candidates: String,

    /// Skip precisions already chosen for a smaller budget
    /// (default: on for `five`, off otherwise).
    #[arg(long)]
    pub unique: Option<bool>,

    /// Renumber colliding instances instead of rejecting them.
    #[arg(long)]
    pub allow_repetitions: bool,

    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_budgets(text: &str, dimension: u32) -> Result<(BudgetSet, bool)> {
    match text {
        "five" => Ok((
            default_expensive_budgets(dimension, BudgetVariant::Five),
            true,
        )),
        "thirtyone" | "31" => Ok((
            default_expensive_budgets(dimension, BudgetVariant::ThirtyOne),
            false,
        )),
        list => {
            let budgets: Vec<f64> = list
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| usage(format!("invalid budget `{t}`")))
                })
                .collect::<Result<_>>()?;
            let set = BudgetSet::new(budgets).map_err(|e| usage(format!("{e}")))?;
            Ok((set, false))
        }
    }
}

pub fn main(args: TargetsArgs) -> Result<()> {
    let candidates = parse_target_range(&args.candidates)?;
    let (budgets, default_unique) = parse_budgets(&args.budgets, args.dim)?;
    let unique = args.unique.unwrap_or(default_unique);

    let dataset = load_inputs(&args.inputs, args.allow_repetitions)?;
    let algorithm = resolve_algorithm(&dataset, args.algorithm.as_deref())?;
    let reference = extract_runtimes(&dataset, &algorithm, &args.function, args.dim, &candidates)?;
    let picked = runlength_targets(&reference, &args.function, args.dim, &budgets, unique)?;

    emit(
        args.out.as_deref(),
        &write_targets_csv(&picked, &algorithm, &args.function, args.dim, unique),
    )
}
