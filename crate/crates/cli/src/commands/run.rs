//! `runfall run`: generate run logs with the built-in mini suite.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use rayon::prelude::*;

use runfall_core::ingest::write_run_log;
use runfall_core::runtime::{derive_seed, rng_from_seed, RNG_ID};
use runfall_core::suite::{instantiate, random_search, SuiteFunction, RANDOM_SEARCH, SUITE_NAME};

use super::{resolve_seed, usage};

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Benchmark suite; only the built-in `mini` suite exists.
    #[arg(long, default_value = SUITE_NAME)]
    pub suite: String,

    /// Functions to run: `all`, a comma list, or a range like
    /// `sphere..linear-slope` over the canonical order.
    #[arg(long, default_value = "all")]
    pub functions: String,

    /// Search space dimension.
    #[arg(long)]
    pub dim: u32,

    /// Number of instances (instance ids 1..=K).
    #[arg(long, default_value_t = 15)]
    pub instances: u32,

    /// Evaluation budget per trial.
    #[arg(long)]
    pub budget: u64,

    /// Optimizer to run; only `random-search` is built in.
    #[arg(long, default_value = RANDOM_SEARCH)]
    pub algorithm: String,

    /// Master seed (falls back to RUNFALL_SEED).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output directory for the .rlog files.
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses the `--functions` selection against the canonical suite order.
pub fn parse_function_selection(text: &str) -> Result<Vec<SuiteFunction>> {
    let text = text.trim();
    if text == "all" {
        return Ok(SuiteFunction::ALL.to_vec());
    }
    if let Some((from, to)) = text.split_once("..") {
        let from: SuiteFunction = from.parse().map_err(|e| usage(format!("{e}")))?;
        let to: SuiteFunction = to.parse().map_err(|e| usage(format!("{e}")))?;
        let start = SuiteFunction::ALL
            .iter()
            .position(|&f| f == from)
            .expect("member");
        let end = SuiteFunction::ALL
            .iter()
            .position(|&f| f == to)
            .expect("member");
        if end < start {
            return Err(usage(format!("empty function range `{text}`")));
        }
        return Ok(SuiteFunction::ALL[start..=end].to_vec());
    }
    let mut out = Vec::new();
    for name in text.split(',') {
        let f: SuiteFunction = name.trim().parse().map_err(|e| usage(format!("{e}")))?;
        if !out.contains(&f) {
            out.push(f);
        }
    }
    if out.is_empty() {
        return Err(usage("no functions selected"));
    }
    Ok(out)
}

pub fn main(args: RunArgs) -> Result<()> {
    if args.suite != SUITE_NAME {
        return Err(usage(format!(
            "unknown suite `{}`; only `{SUITE_NAME}` is built in",
            args.suite
        )));
    }
    if args.algorithm != RANDOM_SEARCH {
        return Err(usage(format!(
            "unknown algorithm `{}`; only `{RANDOM_SEARCH}` is built in",
            args.algorithm
        )));
    }
    if args.dim == 0 || args.instances == 0 || args.budget == 0 {
        return Err(usage("--dim, --instances, and --budget must be at least 1"));
    }
    let seed = resolve_seed(args.seed)?;
    let functions = parse_function_selection(&args.functions)?;
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;

    let jobs: Vec<(SuiteFunction, u32)> = functions
        .iter()
        .flat_map(|&f| (1..=args.instances).map(move |i| (f, i)))
        .collect();

    // Every trial derives its own seed from (master, function, dimension,
    // instance), so file contents do not depend on scheduling.
    jobs.par_iter()
        .try_for_each(|&(function, instance)| -> Result<()> {
            let problem = instantiate(function, args.dim, instance)?;
            let label = format!("run/{}/d{}", function.name(), args.dim);
            let mut rng = rng_from_seed(derive_seed(seed, &label, u64::from(instance)));
            let trace = random_search(&problem, args.budget, &mut rng)?;

            let mut text = format!("# runfall run\n# seed={seed}\n# rng={RNG_ID}\n");
            text.push_str(&write_run_log(&trace));
            let path = args.out.join(format!(
                "{}_{}_d{}_i{}.rlog",
                args.algorithm,
                function.name(),
                args.dim,
                instance
            ));
            std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
        })?;

    eprintln!(
        "wrote {} run logs to {} (seed {seed}, rng {RNG_ID})",
        jobs.len(),
        args.out.display()
    );
    Ok(())
}
