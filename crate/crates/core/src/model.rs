//! Domain types shared by the whole pipeline.
//!
//! A *problem* is a (dimension, function, instance) triple; adding a quality
//! indicator and a target precision turns it into a quintuple against which
//! runtimes are measured. All types are immutable after construction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// One benchmark problem: a parametrized function family instantiated in a
/// fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProblemTriple {
    pub function_id: String,
    pub dimension: u32,
    pub instance_id: u32,
}

impl ProblemTriple {
    pub fn new(function_id: impl Into<String>, dimension: u32, instance_id: u32) -> Result<Self> {
        let function_id = function_id.into();
        validate_identifier("function", &function_id)?;
        if dimension == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        Ok(ProblemTriple {
            function_id,
            dimension,
            instance_id,
        })
    }
}

/// Quality indicator applied to the evaluation history.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatorKind {
    /// Best (minimal) objective value observed so far.
    BestSoFar,
    /// Windowed lower 1%-quantile for noisy objectives.
    NoisyPercentile,
}

/// A problem triple together with the indicator and the target precision it
/// is measured against.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemQuintuple {
    pub triple: ProblemTriple,
    pub indicator: IndicatorKind,
    pub target_precision: f64,
}

impl ProblemQuintuple {
    pub fn new(
        triple: ProblemTriple,
        indicator: IndicatorKind,
        target_precision: f64,
    ) -> Result<Self> {
        if !(target_precision.is_finite() && target_precision > 0.0) {
            return Err(Error::invalid(format!(
                "target precision must be finite and positive, got {target_precision}"
            )));
        }
        Ok(ProblemQuintuple {
            triple,
            indicator,
            target_precision,
        })
    }
}

/// Absolute target value for one instance: reference value plus precision.
pub fn absolute_target(reference_value: f64, precision: f64) -> Result<f64> {
    if !reference_value.is_finite() {
        return Err(Error::invalid(format!(
            "reference value must be finite, got {reference_value}"
        )));
    }
    if !(precision.is_finite() && precision > 0.0) {
        return Err(Error::invalid(format!(
            "precision must be finite and positive, got {precision}"
        )));
    }
    Ok(reference_value + precision)
}

/// One improvement point of a trial: the indicator value first attained at
/// `evals` function evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub evals: u64,
    pub value: f64,
}

/// One trial's logged indicator trace plus its identity.
///
/// Steps are kept in canonical best-so-far form: evaluation counts strictly
/// increasing, values strictly decreasing. `total_evaluations` is the full
/// trial length, which may exceed the last improvement.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    triple: ProblemTriple,
    algorithm: String,
    suite: String,
    reference_value: f64,
    steps: Vec<Step>,
    total_evaluations: u64,
}

impl RunTrace {
    pub fn new(
        triple: ProblemTriple,
        algorithm: impl Into<String>,
        suite: impl Into<String>,
        reference_value: f64,
        steps: Vec<Step>,
        total_evaluations: u64,
    ) -> Result<Self> {
        let algorithm = algorithm.into();
        let suite = suite.into();
        validate_identifier("algorithm", &algorithm)?;
        validate_identifier("suite", &suite)?;
        if !reference_value.is_finite() {
            return Err(Error::invalid(format!(
                "reference value must be finite, got {reference_value}"
            )));
        }
        if steps.is_empty() {
            return Err(Error::invalid("a trial records at least one evaluation"));
        }
        if steps.iter().any(|s| !s.value.is_finite()) {
            return Err(Error::invalid("step values must be finite"));
        }
        for pair in steps.windows(2) {
            if pair[1].evals <= pair[0].evals {
                return Err(Error::invalid(format!(
                    "step evaluation counts must be strictly increasing ({} then {})",
                    pair[0].evals, pair[1].evals
                )));
            }
            if pair[1].value >= pair[0].value {
                return Err(Error::invalid(format!(
                    "step values must be strictly decreasing ({} then {})",
                    pair[0].value, pair[1].value
                )));
            }
        }
        if steps[0].evals == 0 {
            return Err(Error::invalid("evaluation counts start at 1"));
        }
        let last = steps.last().expect("non-empty").evals;
        if total_evaluations < last {
            return Err(Error::invalid(format!(
                "total evaluations {total_evaluations} below last recorded step {last}"
            )));
        }
        Ok(RunTrace {
            triple,
            algorithm,
            suite,
            reference_value,
            steps,
            total_evaluations,
        })
    }

    pub fn triple(&self) -> &ProblemTriple {
        &self.triple
    }

    pub fn algorithm(&self) -> &str {
        &self.algorithm
    }

    pub fn suite(&self) -> &str {
        &self.suite
    }

    /// The instance's reference indicator value (optimal value for the
    /// built-in suite); targets are formed as reference plus precision.
    pub fn reference_value(&self) -> f64 {
        self.reference_value
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn total_evaluations(&self) -> u64 {
        self.total_evaluations
    }

    /// Best indicator value reached in the whole trial.
    pub fn final_value(&self) -> f64 {
        self.steps.last().expect("non-empty").value
    }
}

/// Origin of a target precision set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetOrigin {
    Fixed,
    RunlengthBased,
}

/// Ordered set of target precisions, strictly decreasing (easiest first).
/// The final (smallest) precision doubles as the "final target" sentinel.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSet {
    precisions: Vec<f64>,
    origin: TargetOrigin,
}

impl TargetSet {
    pub fn new(precisions: Vec<f64>, origin: TargetOrigin) -> Result<Self> {
        if precisions.is_empty() {
            return Err(Error::invalid("target set must not be empty"));
        }
        if precisions.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
            return Err(Error::invalid(
                "target precisions must be finite and positive",
            ));
        }
        for pair in precisions.windows(2) {
            if pair[1] >= pair[0] {
                return Err(Error::invalid(format!(
                    "target precisions must be strictly decreasing ({} then {})",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(TargetSet { precisions, origin })
    }

    pub fn precisions(&self) -> &[f64] {
        &self.precisions
    }

    pub fn origin(&self) -> TargetOrigin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.precisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.precisions.is_empty()
    }

    /// The smallest (hardest) precision.
    pub fn final_precision(&self) -> f64 {
        *self.precisions.last().expect("non-empty")
    }

    /// Absolute targets for one instance, in precision order.
    pub fn absolute_targets(&self, reference_value: f64) -> Result<Vec<f64>> {
        self.precisions
            .iter()
            .map(|p| absolute_target(reference_value, *p))
            .collect()
    }
}

/// Key of one runtime-table cell: a (function, dimension) group at the
/// target of the given index into the table's `TargetSet`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TableKey {
    pub function_id: String,
    pub dimension: u32,
    pub target_index: usize,
}

impl TableKey {
    pub fn new(function_id: impl Into<String>, dimension: u32, target_index: usize) -> Self {
        TableKey {
            function_id: function_id.into(),
            dimension,
            target_index,
        }
    }
}

/// Per-cell runtime data: hitting times of successful trials and total
/// evaluation counts of unsuccessful ones. Together they cover all K trials
/// of the instance group.
#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeEntry {
    successes: Vec<u64>,
    failures: Vec<u64>,
}

impl RuntimeEntry {
    pub fn new(successes: Vec<u64>, failures: Vec<u64>) -> Result<Self> {
        if successes.is_empty() && failures.is_empty() {
            return Err(Error::invalid("a runtime entry covers at least one trial"));
        }
        if successes.iter().chain(failures.iter()).any(|&e| e == 0) {
            return Err(Error::invalid("evaluation counts are at least 1"));
        }
        Ok(RuntimeEntry {
            successes,
            failures,
        })
    }

    pub fn successes(&self) -> &[u64] {
        &self.successes
    }

    pub fn failures(&self) -> &[u64] {
        &self.failures
    }

    /// Number of trials K in the instance group.
    pub fn instance_count(&self) -> usize {
        self.successes.len() + self.failures.len()
    }

    pub fn success_count(&self) -> usize {
        self.successes.len()
    }
}

/// Runtime data per (function, dimension, target precision), all cells
/// sharing one `TargetSet`.
#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeTable {
    targets: TargetSet,
    entries: BTreeMap<TableKey, RuntimeEntry>,
}

impl RuntimeTable {
    pub fn new(targets: TargetSet) -> Self {
        RuntimeTable {
            targets,
            entries: BTreeMap::new(),
        }
    }

    pub fn targets(&self) -> &TargetSet {
        &self.targets
    }

    pub fn insert(&mut self, key: TableKey, entry: RuntimeEntry) -> Result<()> {
        if key.target_index >= self.targets.len() {
            return Err(Error::invalid(format!(
                "target index {} out of range for {} targets",
                key.target_index,
                self.targets.len()
            )));
        }
        // All cells of one (function, dimension) group describe the same K trials.
        let group_count = self
            .group_entries(&key.function_id, key.dimension)
            .map(|(_, e)| e.instance_count())
            .next();
        if let Some(k) = group_count {
            if k != entry.instance_count() {
                return Err(Error::invalid(format!(
                    "entry for {}/d{} has {} trials, group has {}",
                    key.function_id,
                    key.dimension,
                    entry.instance_count(),
                    k
                )));
            }
        }
        if self.entries.contains_key(&key) {
            return Err(Error::invalid(format!(
                "duplicate table cell {}/d{} target #{}",
                key.function_id, key.dimension, key.target_index
            )));
        }
        self.entries.insert(key, entry);
        Ok(())
    }

    pub fn get(
        &self,
        function_id: &str,
        dimension: u32,
        target_index: usize,
    ) -> Option<&RuntimeEntry> {
        self.entries
            .get(&TableKey::new(function_id, dimension, target_index))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TableKey, &RuntimeEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn precision_of(&self, key: &TableKey) -> f64 {
        self.targets.precisions()[key.target_index]
    }

    /// Distinct dimensions covered by the table, sorted.
    pub fn dimensions(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.entries.keys().map(|k| k.dimension).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Distinct (function, dimension) groups, sorted.
    pub fn groups(&self) -> Vec<(String, u32)> {
        let mut out: Vec<(String, u32)> = Vec::new();
        for key in self.entries.keys() {
            let g = (key.function_id.clone(), key.dimension);
            if out.last() != Some(&g) {
                out.push(g);
            }
        }
        out
    }

    fn group_entries(
        &self,
        function_id: &str,
        dimension: u32,
    ) -> impl Iterator<Item = (&TableKey, &RuntimeEntry)> {
        let lo = TableKey::new(function_id, dimension, 0);
        let hi = TableKey::new(function_id, dimension, usize::MAX);
        self.entries.range(lo..=hi)
    }

    /// Folds another table over the same target grid into this one.
    pub fn merge(&mut self, other: RuntimeTable) -> Result<()> {
        if other.targets != self.targets {
            return Err(Error::GridMismatch(
                "cannot merge tables over different target sets".to_owned(),
            ));
        }
        for (key, entry) in other.entries {
            self.insert(key, entry)?;
        }
        Ok(())
    }
}

/// Step function over runtimes with missing-value accounting.
///
/// `total_count` includes missing runtimes, so the right limit of the curve
/// is the fraction of finite samples.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfCurve {
    sorted_runtimes: Vec<f64>,
    total_count: usize,
    cross_x: Option<f64>,
    solved_fraction: f64,
}

impl EcdfCurve {
    /// Builds a curve from finite runtime samples (any order) and the total
    /// sample count including missing runtimes.
    pub fn new(
        mut finite: Vec<f64>,
        total_count: usize,
        cross_x: Option<f64>,
        solved_fraction: f64,
    ) -> Result<Self> {
        if total_count == 0 {
            return Err(Error::invalid("an ECDF needs at least one sample"));
        }
        if finite.len() > total_count {
            return Err(Error::invalid("finite sample count exceeds total count"));
        }
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("runtime samples must be finite"));
        }
        if !(0.0..=1.0).contains(&solved_fraction) {
            return Err(Error::invalid("solved fraction must lie in [0, 1]"));
        }
        finite.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
        Ok(EcdfCurve {
            sorted_runtimes: finite,
            total_count,
            cross_x,
            solved_fraction,
        })
    }

    /// F(x): fraction of all samples (missing included in the denominator)
    /// with runtime <= x. Right-continuous.
    pub fn value_at(&self, x: f64) -> f64 {
        let covered = self.sorted_runtimes.partition_point(|&r| r <= x);
        covered as f64 / self.total_count as f64
    }

    /// Distinct step positions with the curve value attained there.
    pub fn step_points(&self) -> Vec<(f64, f64)> {
        let mut points = Vec::new();
        let mut covered = 0usize;
        let mut i = 0usize;
        while i < self.sorted_runtimes.len() {
            let x = self.sorted_runtimes[i];
            while i < self.sorted_runtimes.len() && self.sorted_runtimes[i] == x {
                covered += 1;
                i += 1;
            }
            points.push((x, covered as f64 / self.total_count as f64));
        }
        points
    }

    /// Limit of F to the right: fraction of finite runtimes.
    pub fn right_limit(&self) -> f64 {
        self.sorted_runtimes.len() as f64 / self.total_count as f64
    }

    pub fn finite_count(&self) -> usize {
        self.sorted_runtimes.len()
    }

    pub fn total_count(&self) -> usize {
        self.total_count
    }

    pub fn max_finite(&self) -> Option<f64> {
        self.sorted_runtimes.last().copied()
    }

    /// The finite runtime samples, ascending.
    pub fn finite_runtimes(&self) -> &[f64] {
        &self.sorted_runtimes
    }

    /// Median of the maximal unsuccessful-trial lengths over the aggregated
    /// groups, when any group had failures.
    pub fn cross_x(&self) -> Option<f64> {
        self.cross_x
    }

    /// Fraction of aggregated (function, precision) pairs with at least one
    /// successful trial.
    pub fn solved_fraction(&self) -> f64 {
        self.solved_fraction
    }

    /// The same curve with all runtimes (and the cross position) scaled by
    /// a positive factor, e.g. 1/dimension for per-dimension budgets.
    pub fn scale_x(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::invalid("scale factor must be finite and positive"));
        }
        EcdfCurve::new(
            self.sorted_runtimes.iter().map(|x| x * factor).collect(),
            self.total_count,
            self.cross_x.map(|x| x * factor),
            self.solved_fraction,
        )
    }
}

/// Index key of one trial inside a `DataSet`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TraceKey {
    pub algorithm: String,
    pub function_id: String,
    pub dimension: u32,
    pub instance_id: u32,
}

impl TraceKey {
    pub fn of(trace: &RunTrace) -> Self {
        TraceKey {
            algorithm: trace.algorithm().to_owned(),
            function_id: trace.triple().function_id.clone(),
            dimension: trace.triple().dimension,
            instance_id: trace.triple().instance_id,
        }
    }
}

#[derive(Debug, Clone)]
struct StoredTrace {
    trace: RunTrace,
    source: Option<String>,
    synthetic_instance: bool,
}

/// Collection of run traces with at most one trial per
/// (algorithm, function, dimension, instance). Iteration order is the
/// sorted key order, independent of insertion order.
#[derive(Debug, Clone, Default)]
pub struct DataSet {
    traces: BTreeMap<TraceKey, StoredTrace>,
}

impl DataSet {
    pub fn new() -> Self {
        DataSet::default()
    }

    pub fn insert(&mut self, trace: RunTrace) -> Result<()> {
        self.insert_traced(trace, None, false)
    }

    /// Inserts a trace, remembering its source file. With
    /// `allow_repetition`, a colliding trace is kept under a fresh synthetic
    /// instance id (next free id in its group) and flagged.
    pub fn insert_traced(
        &mut self,
        mut trace: RunTrace,
        source: Option<String>,
        allow_repetition: bool,
    ) -> Result<()> {
        let key = TraceKey::of(&trace);
        let mut synthetic = false;
        if self.traces.contains_key(&key) {
            if !allow_repetition {
                let first = self
                    .traces
                    .get(&key)
                    .and_then(|s| s.source.clone())
                    .unwrap_or_else(|| "<memory>".to_owned());
                return Err(Error::DuplicateTrace {
                    key: format!(
                        "{}/{}/d{}/i{}",
                        key.algorithm, key.function_id, key.dimension, key.instance_id
                    ),
                    first,
                    second: source.unwrap_or_else(|| "<memory>".to_owned()),
                });
            }
            let next = self
                .group(&key.algorithm, &key.function_id, key.dimension)
                .iter()
                .map(|t| t.triple().instance_id)
                .max()
                .expect("group is non-empty")
                + 1;
            trace.triple.instance_id = next;
            synthetic = true;
        }
        let key = TraceKey::of(&trace);
        self.traces.insert(
            key,
            StoredTrace {
                trace,
                source,
                synthetic_instance: synthetic,
            },
        );
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn traces(&self) -> impl Iterator<Item = &RunTrace> {
        self.traces.values().map(|s| &s.trace)
    }

    pub fn get(&self, key: &TraceKey) -> Option<&RunTrace> {
        self.traces.get(key).map(|s| &s.trace)
    }

    /// Whether the trace under `key` was renumbered at ingestion because it
    /// repeated an existing instance.
    pub fn is_synthetic_instance(&self, key: &TraceKey) -> bool {
        self.traces.get(key).is_some_and(|s| s.synthetic_instance)
    }

    /// All trials of one (algorithm, function, dimension) group, by
    /// ascending instance id.
    pub fn group(&self, algorithm: &str, function_id: &str, dimension: u32) -> Vec<&RunTrace> {
        let lo = TraceKey {
            algorithm: algorithm.to_owned(),
            function_id: function_id.to_owned(),
            dimension,
            instance_id: 0,
        };
        let hi = TraceKey {
            algorithm: algorithm.to_owned(),
            function_id: function_id.to_owned(),
            dimension,
            instance_id: u32::MAX,
        };
        self.traces.range(lo..=hi).map(|(_, s)| &s.trace).collect()
    }

    /// Sorted distinct algorithm names.
    pub fn algorithms(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for key in self.traces.keys() {
            if out.last().map(String::as_str) != Some(key.algorithm.as_str()) {
                out.push(key.algorithm.clone());
            }
        }
        out
    }

    /// Sorted distinct (function, dimension) groups recorded for an algorithm.
    pub fn group_keys(&self, algorithm: &str) -> Vec<(String, u32)> {
        let mut out: Vec<(String, u32)> = Vec::new();
        for key in self.traces.keys().filter(|k| k.algorithm == algorithm) {
            let g = (key.function_id.clone(), key.dimension);
            if out.last() != Some(&g) {
                out.push(g);
            }
        }
        out
    }

    /// Sorted distinct functions for an algorithm in one dimension.
    pub fn functions(&self, algorithm: &str, dimension: u32) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (f, d) in self.group_keys(algorithm) {
            if d == dimension && out.last().map(String::as_str) != Some(f.as_str()) {
                out.push(f);
            }
        }
        out
    }

    /// Sorted distinct dimensions recorded for an algorithm.
    pub fn dimensions(&self, algorithm: &str) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .group_keys(algorithm)
            .into_iter()
            .map(|(_, d)| d)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Identifiers end up in log headers, CSV fields, and file names, so they
/// are restricted to a slug alphabet.
pub(crate) fn validate_identifier(kind: &str, s: &str) -> Result<()> {
    if s.is_empty() {
        return Err(Error::invalid(format!("{kind} name must not be empty")));
    }
    if !s
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
    {
        return Err(Error::invalid(format!(
            "{kind} name {s:?} contains characters outside [A-Za-z0-9._-]"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple() -> ProblemTriple {
        ProblemTriple::new("sphere", 5, 1).unwrap()
    }

    fn trace(steps: Vec<Step>, total: u64) -> Result<RunTrace> {
        RunTrace::new(triple(), "rs", "mini", 0.0, steps, total)
    }

    #[test]
    fn absolute_target_zero_reference() {
        assert_eq!(absolute_target(0.0, 1e-8).unwrap(), 1e-8);
    }

    #[test]
    fn absolute_target_direct_sum() {
        assert_eq!(absolute_target(-3.5, 1e2).unwrap(), 96.5);
    }

    #[test]
    fn absolute_target_neighbor_ratio() {
        // Neighboring precisions at ratio 10^0.2 sit at that ratio above the reference.
        let ratio = 10f64.powf(0.2);
        let a = absolute_target(0.0, 1.0).unwrap();
        let b = absolute_target(0.0, ratio).unwrap();
        assert!((b / a - ratio).abs() < 1e-12);
    }

    #[test]
    fn absolute_target_rejects_non_finite() {
        assert!(absolute_target(f64::NAN, 1.0).is_err());
        assert!(absolute_target(0.0, f64::INFINITY).is_err());
        assert!(absolute_target(0.0, -1.0).is_err());
    }

    #[test]
    fn target_set_requires_strictly_decreasing() {
        assert!(TargetSet::new(vec![1.0, 1.0], TargetOrigin::Fixed).is_err());
        assert!(TargetSet::new(vec![0.1, 1.0], TargetOrigin::Fixed).is_err());
        assert!(TargetSet::new(vec![], TargetOrigin::Fixed).is_err());
        assert!(TargetSet::new(vec![1.0, 0.1], TargetOrigin::Fixed).is_ok());
    }

    #[test]
    fn absolute_targets_mirror_precisions() {
        let ts = TargetSet::new(vec![1e2, 1e0, 1e-2], TargetOrigin::Fixed).unwrap();
        let abs = ts.absolute_targets(-7.25).unwrap();
        assert_eq!(abs, vec![-7.25 + 1e2, -7.25 + 1e0, -7.25 + 1e-2]);
        assert!(abs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn run_trace_validates_shape() {
        assert!(trace(vec![], 1).is_err());
        assert!(trace(
            vec![Step {
                evals: 0,
                value: 1.0
            }],
            1
        )
        .is_err());
        // non-increasing evals
        assert!(trace(
            vec![
                Step {
                    evals: 2,
                    value: 2.0
                },
                Step {
                    evals: 2,
                    value: 1.0
                }
            ],
            2
        )
        .is_err());
        // non-decreasing values
        assert!(trace(
            vec![
                Step {
                    evals: 1,
                    value: 1.0
                },
                Step {
                    evals: 2,
                    value: 1.0
                }
            ],
            2
        )
        .is_err());
        // total below last step
        assert!(trace(
            vec![Step {
                evals: 5,
                value: 1.0
            }],
            4
        )
        .is_err());
        assert!(trace(
            vec![Step {
                evals: 5,
                value: 1.0
            }],
            5
        )
        .is_ok());
    }

    #[test]
    fn dataset_rejects_duplicate_key() {
        let t = trace(
            vec![Step {
                evals: 1,
                value: 5.0,
            }],
            10,
        )
        .unwrap();
        let mut ds = DataSet::new();
        ds.insert(t.clone()).unwrap();
        let err = ds.insert(t).unwrap_err();
        assert!(matches!(err, Error::DuplicateTrace { .. }));
    }

    #[test]
    fn dataset_synthesizes_repeated_instances_when_allowed() {
        let t = trace(
            vec![Step {
                evals: 1,
                value: 5.0,
            }],
            10,
        )
        .unwrap();
        let mut ds = DataSet::new();
        ds.insert_traced(t.clone(), None, true).unwrap();
        ds.insert_traced(t.clone(), None, true).unwrap();
        assert_eq!(ds.len(), 2);
        let group = ds.group("rs", "sphere", 5);
        assert_eq!(group.len(), 2);
        assert_eq!(group[0].triple().instance_id, 1);
        assert_eq!(group[1].triple().instance_id, 2);
        let key = TraceKey::of(group[1]);
        assert!(ds.is_synthetic_instance(&key));
    }

    #[test]
    fn ecdf_curve_basic_counting() {
        let c = EcdfCurve::new(vec![4.0, 1.0, 2.0], 4, None, 0.75).unwrap();
        assert_eq!(c.value_at(0.5), 0.0);
        assert_eq!(c.value_at(2.0), 0.5);
        assert_eq!(c.value_at(1e9), 0.75);
        assert_eq!(c.right_limit(), 0.75);
        assert_eq!(c.step_points(), vec![(1.0, 0.25), (2.0, 0.5), (4.0, 0.75)]);
    }

    #[test]
    fn ecdf_scale_x_shifts_steps() {
        let c = EcdfCurve::new(vec![1.0, 10.0], 2, Some(10.0), 1.0).unwrap();
        let s = c.scale_x(10.0).unwrap();
        assert_eq!(s.step_points(), vec![(10.0, 0.5), (100.0, 1.0)]);
        assert_eq!(s.cross_x(), Some(100.0));
    }

    #[test]
    fn identifiers_are_slugs() {
        assert!(validate_identifier("function", "linear-slope").is_ok());
        assert!(validate_identifier("function", "f_1.a").is_ok());
        assert!(validate_identifier("function", "").is_err());
        assert!(validate_identifier("function", "a b").is_err());
        assert!(validate_identifier("function", "a,b").is_err());
        assert!(validate_identifier("function", "a#b").is_err());
    }

    #[test]
    fn runtime_table_enforces_group_trial_count() {
        let ts = TargetSet::new(vec![1.0, 0.1], TargetOrigin::Fixed).unwrap();
        let mut table = RuntimeTable::new(ts);
        table
            .insert(
                TableKey::new("sphere", 5, 0),
                RuntimeEntry::new(vec![3, 4], vec![]).unwrap(),
            )
            .unwrap();
        let err = table.insert(
            TableKey::new("sphere", 5, 1),
            RuntimeEntry::new(vec![9], vec![]).unwrap(),
        );
        assert!(err.is_err());
        table
            .insert(
                TableKey::new("sphere", 5, 1),
                RuntimeEntry::new(vec![9], vec![100]).unwrap(),
            )
            .unwrap();
        assert_eq!(table.groups(), vec![("sphere".to_owned(), 5)]);
    }

    #[test]
    fn quintuple_requires_positive_precision() {
        assert!(ProblemQuintuple::new(triple(), IndicatorKind::BestSoFar, 0.0).is_err());
        assert!(ProblemQuintuple::new(triple(), IndicatorKind::BestSoFar, 1e-8).is_ok());
    }
}
