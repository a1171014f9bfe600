//! Runtime extraction, average runtime, and simulated restarts.
//!
//! A trial is successful for a target when its best-so-far indicator value
//! first reaches the target; the evaluation count at that point is the
//! runtime. Unsuccessful trials contribute their full evaluation budget.
//! The conceptual restart algorithm draws trials uniformly with replacement
//! until a success, summing the unsuccessful budgets plus the final
//! successful runtime.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{DataSet, RunTrace, RuntimeEntry, RuntimeTable, TableKey, TargetSet};

/// The pinned deterministic generator. Identical seeds yield identical
/// sample streams on every platform; the identifier below is embedded in
/// emitted artifacts.
pub type Rng = ChaCha8Rng;

/// Identifier of the pinned generator, recorded in output metadata.
pub const RNG_ID: &str = "chacha8";

/// Default number of bootstrap samples per (function, precision) pair.
pub const DEFAULT_BOOTSTRAPS: usize = 1000;

pub fn rng_from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Stable sub-seed for a keyed unit of work, so per-entry sample streams do
/// not depend on thread schedule or iteration order.
pub fn derive_seed(master: u64, label: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325; // FNV-1a over the label
    for &b in label.as_bytes() {
        h = (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3);
    }
    mix64(master ^ mix64(h ^ mix64(index)))
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One simulated run of the restart algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestartSample {
    /// Total evaluations: unsuccessful budgets plus the final successful runtime.
    pub runtime: u64,
    /// Number of unsuccessful trials drawn before the success.
    pub restarts_used: u64,
}

/// Smallest evaluation count at which the trace's value reaches the
/// absolute target (value <= target), if ever.
pub fn hitting_time(trace: &RunTrace, target: f64) -> Option<u64> {
    trace
        .steps()
        .iter()
        .find(|s| s.value <= target)
        .map(|s| s.evals)
}

/// Builds the runtime table of one (algorithm, function, dimension) group
/// over a target set. Per precision, successful trials contribute their
/// hitting time and unsuccessful ones their total evaluations; an
/// unsuccessful trial reports the same budget for every missed target.
pub fn extract_runtimes(
    dataset: &DataSet,
    algorithm: &str,
    function_id: &str,
    dimension: u32,
    targets: &TargetSet,
) -> Result<RuntimeTable> {
    let group = dataset.group(algorithm, function_id, dimension);
    if group.is_empty() {
        return Err(Error::EmptyGroup(format!(
            "{algorithm}/{function_id}/d{dimension}"
        )));
    }
    let mut table = RuntimeTable::new(targets.clone());
    for (idx, &precision) in targets.precisions().iter().enumerate() {
        let mut successes = Vec::new();
        let mut failures = Vec::new();
        for trace in &group {
            let target = crate::model::absolute_target(trace.reference_value(), precision)?;
            match hitting_time(trace, target) {
                Some(rt) => successes.push(rt),
                None => failures.push(trace.total_evaluations()),
            }
        }
        table.insert(
            TableKey::new(function_id, dimension, idx),
            RuntimeEntry::new(successes, failures)?,
        )?;
    }
    Ok(table)
}

/// Runtime table covering every (function, dimension) group of an algorithm.
pub fn extract_table(
    dataset: &DataSet,
    algorithm: &str,
    targets: &TargetSet,
) -> Result<RuntimeTable> {
    let groups = dataset.group_keys(algorithm);
    if groups.is_empty() {
        return Err(Error::EmptyGroup(algorithm.to_owned()));
    }
    let mut table = RuntimeTable::new(targets.clone());
    for (function_id, dimension) in groups {
        let part = extract_runtimes(dataset, algorithm, &function_id, dimension, targets)?;
        table.merge(part)?;
    }
    Ok(table)
}

/// Average runtime: all evaluations spent across the group divided by the
/// number of successes. Infinite when nothing succeeded.
pub fn art(entry: &RuntimeEntry) -> f64 {
    if entry.success_count() == 0 {
        return f64::INFINITY;
    }
    let total: u64 = entry
        .successes()
        .iter()
        .chain(entry.failures().iter())
        .sum();
    total as f64 / entry.success_count() as f64
}

/// Closed-form expectation of the restart runtime:
/// E(RT) = E(RT_success) + (1 - p) / p * E(RT_unsuccessful).
/// With p = 1 the second term is zero even when no failure mean exists.
pub fn art_ps_form(mean_success: f64, mean_failure: f64, p_success: f64) -> Result<f64> {
    if !(p_success > 0.0 && p_success <= 1.0) {
        return Err(Error::invalid(format!(
            "success probability must lie in (0, 1], got {p_success}"
        )));
    }
    if p_success == 1.0 {
        return Ok(mean_success);
    }
    Ok(mean_success + (1.0 - p_success) / p_success * mean_failure)
}

/// Trials of an entry in their recorded order: successful runtimes then
/// unsuccessful budgets.
fn trials(entry: &RuntimeEntry) -> Vec<(u64, bool)> {
    entry
        .successes()
        .iter()
        .map(|&rt| (rt, true))
        .chain(entry.failures().iter().map(|&evals| (evals, false)))
        .collect()
}

fn run_from(trials: &[(u64, bool)], first: usize, rng: &mut Rng) -> RestartSample {
    let mut idx = first;
    let mut runtime = 0u64;
    let mut restarts = 0u64;
    loop {
        let (evals, success) = trials[idx];
        runtime += evals;
        if success {
            return RestartSample {
                runtime,
                restarts_used: restarts,
            };
        }
        restarts += 1;
        idx = rng.random_range(0..trials.len());
    }
}

/// Draws one simulated restart runtime: trials are picked uniformly with
/// replacement until a successful one ends the run.
pub fn simulate_restart(entry: &RuntimeEntry, rng: &mut Rng) -> Result<RestartSample> {
    if entry.success_count() == 0 {
        return Err(Error::UndefinedRuntime);
    }
    let trials = trials(entry);
    let first = rng.random_range(0..trials.len());
    Ok(run_from(&trials, first, rng))
}

/// Samples `count` simulated restart runtimes.
///
/// With `variance_reduction`, the trials are first shuffled once (seeded),
/// then sample k starts deterministically at trial (k - 1) mod K and only
/// continues with random draws if that trial failed. For count == K with
/// all trials successful this returns each observed runtime exactly once.
pub fn bootstrap_runtimes(
    entry: &RuntimeEntry,
    count: usize,
    variance_reduction: bool,
    rng: &mut Rng,
) -> Result<Vec<u64>> {
    if entry.success_count() == 0 {
        return Err(Error::UndefinedRuntime);
    }
    if count == 0 {
        return Err(Error::invalid("bootstrap sample count must be at least 1"));
    }
    let mut trials = trials(entry);
    let k = trials.len();
    let mut out = Vec::with_capacity(count);
    if variance_reduction {
        shuffle(&mut trials, rng);
        for sample in 0..count {
            out.push(run_from(&trials, sample % k, rng).runtime);
        }
    } else {
        for _ in 0..count {
            out.push(simulate_restart(entry, rng)?.runtime);
        }
    }
    Ok(out)
}

/// Fisher-Yates on the pinned generator.
fn shuffle<T>(items: &mut [T], rng: &mut Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

/// One point of the scaling plot: average runtime divided by dimension, or
/// missing when nothing succeeded in that dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub dimension: u32,
    pub art_over_dim: Option<f64>,
}

/// Average runtime over dimension, per dimension, for a single function and
/// precision. Output is sorted by ascending dimension.
pub fn scaling_series(
    dataset: &DataSet,
    algorithm: &str,
    function_id: &str,
    dimensions: &[u32],
    precision: f64,
) -> Result<Vec<ScalingPoint>> {
    let targets = TargetSet::new(vec![precision], crate::model::TargetOrigin::Fixed)?;
    let mut dims: Vec<u32> = dimensions.to_vec();
    dims.sort_unstable();
    dims.dedup();
    let mut out = Vec::with_capacity(dims.len());
    for dimension in dims {
        let table = extract_runtimes(dataset, algorithm, function_id, dimension, &targets)?;
        let entry = table
            .get(function_id, dimension, 0)
            .expect("single-target table");
        let a = art(entry);
        out.push(ScalingPoint {
            dimension,
            art_over_dim: a.is_finite().then(|| a / dimension as f64),
        });
    }
    Ok(out)
}
