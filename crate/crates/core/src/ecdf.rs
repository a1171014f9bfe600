//! Empirical runtime distributions with the aggregation semantics of the
//! fixed-target pipeline.
//!
//! Aggregation treats every (function, target precision) pair as one
//! problem: pairs with at least one successful trial contribute N
//! bootstrapped restart runtimes, pairs without success contribute N
//! missing entries that stay in the denominator. Aggregation never spans
//! more than one dimension.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{DataSet, EcdfCurve, RuntimeTable, TargetSet};
use crate::runtime::{art, bootstrap_runtimes, derive_seed, extract_runtimes, rng_from_seed};

/// What one aggregate curve covers: one algorithm, exactly one dimension,
/// and a function subset (`None` = every function the algorithm has data
/// for in that dimension).
#[derive(Debug, Clone, PartialEq)]
pub struct AggregationScope {
    algorithm: String,
    dimension: u32,
    functions: Option<Vec<String>>,
}

impl AggregationScope {
    /// Builds a scope from the requested dimensions; anything other than
    /// exactly one dimension is rejected, since runtimes from different
    /// dimensions must never be pooled.
    pub fn new(
        algorithm: impl Into<String>,
        dimensions: &[u32],
        functions: Option<Vec<String>>,
    ) -> Result<Self> {
        if dimensions.len() != 1 {
            return Err(Error::invalid(format!(
                "aggregation covers exactly one dimension, got {:?}",
                dimensions
            )));
        }
        if let Some(f) = &functions {
            if f.is_empty() {
                return Err(Error::invalid("function subset must not be empty"));
            }
        }
        let mut functions = functions;
        if let Some(f) = &mut functions {
            f.sort();
            f.dedup();
        }
        Ok(AggregationScope {
            algorithm: algorithm.into(),
            dimension: dimensions[0],
            functions,
        })
    }

    pub fn algorithm(&self) -> &str {
        &self.algorithm
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// The functions the scope spans, resolved against the dataset.
    pub fn resolve_functions(&self, dataset: &DataSet) -> Result<Vec<String>> {
        let present = dataset.functions(&self.algorithm, self.dimension);
        let functions = match &self.functions {
            None => present,
            Some(requested) => {
                for f in requested {
                    if !present.contains(f) {
                        return Err(Error::EmptyGroup(format!(
                            "{}/{}/d{}",
                            self.algorithm, f, self.dimension
                        )));
                    }
                }
                requested.clone()
            }
        };
        if functions.is_empty() {
            return Err(Error::EmptyGroup(format!(
                "{}/d{}",
                self.algorithm, self.dimension
            )));
        }
        Ok(functions)
    }
}

/// Plain ECDF over runtime samples; `None` marks a missing runtime, which
/// counts in the denominator but never in the numerator.
pub fn build_ecdf(samples: &[Option<f64>]) -> Result<EcdfCurve> {
    if samples.is_empty() {
        return Err(Error::invalid("an ECDF needs at least one sample"));
    }
    let finite: Vec<f64> = samples.iter().filter_map(|s| *s).collect();
    let total = samples.len();
    let solved = finite.len() as f64 / total as f64;
    EcdfCurve::new(finite, total, None, solved)
}

/// Runtime extraction for every (function, target) pair of the scope.
pub fn scope_table(
    dataset: &DataSet,
    scope: &AggregationScope,
    targets: &TargetSet,
) -> Result<RuntimeTable> {
    let functions = scope.resolve_functions(dataset)?;
    let mut table = RuntimeTable::new(targets.clone());
    for function_id in &functions {
        let part = extract_runtimes(
            dataset,
            &scope.algorithm,
            function_id,
            scope.dimension,
            targets,
        )?;
        table.merge(part)?;
    }
    Ok(table)
}

/// Aggregate ECDF over every (function, target) pair of a runtime table.
///
/// Each pair contributes exactly `bootstraps` samples so pairs carry equal
/// weight. Sample streams are seeded per pair from the master seed, so the
/// result is independent of evaluation order and thread count.
pub fn table_ecdf(table: &RuntimeTable, bootstraps: usize, seed: u64) -> Result<EcdfCurve> {
    if bootstraps == 0 {
        return Err(Error::invalid("bootstrap count must be at least 1"));
    }
    if table.is_empty() {
        return Err(Error::invalid("runtime table has no entries"));
    }
    let dims = table.dimensions();
    if dims.len() != 1 {
        return Err(Error::invalid(format!(
            "aggregation covers exactly one dimension, table spans {dims:?}"
        )));
    }
    let cells: Vec<_> = table.entries().collect();
    let per_cell: Vec<Vec<Option<f64>>> = cells
        .par_iter()
        .map(|(key, entry)| {
            if entry.success_count() == 0 {
                return Ok(vec![None; bootstraps]);
            }
            let label = format!("{}/d{}", key.function_id, key.dimension);
            let mut rng = rng_from_seed(derive_seed(seed, &label, key.target_index as u64));
            let samples = bootstrap_runtimes(entry, bootstraps, true, &mut rng)?;
            Ok(samples.into_iter().map(|rt| Some(rt as f64)).collect())
        })
        .collect::<Result<_>>()?;

    let samples: Vec<Option<f64>> = per_cell.into_iter().flatten().collect();
    let finite: Vec<f64> = samples.iter().filter_map(|s| *s).collect();
    EcdfCurve::new(
        finite,
        samples.len(),
        table_cross_marker(table),
        table_solved_fraction(table),
    )
}

/// Aggregate ECDF straight from a dataset.
pub fn aggregate_ecdf(
    dataset: &DataSet,
    scope: &AggregationScope,
    targets: &TargetSet,
    bootstraps: usize,
    seed: u64,
) -> Result<EcdfCurve> {
    let table = scope_table(dataset, scope, targets)?;
    table_ecdf(&table, bootstraps, seed)
}

/// Median over (function, target) pairs of the maximal unsuccessful-trial
/// length; `None` when every trial in every pair succeeded.
pub fn table_cross_marker(table: &RuntimeTable) -> Option<f64> {
    let mut maxima: Vec<u64> = table
        .entries()
        .filter_map(|(_, entry)| entry.failures().iter().max().copied())
        .collect();
    if maxima.is_empty() {
        return None;
    }
    maxima.sort_unstable();
    let n = maxima.len();
    Some(if n % 2 == 1 {
        maxima[n / 2] as f64
    } else {
        (maxima[n / 2 - 1] as f64 + maxima[n / 2] as f64) / 2.0
    })
}

/// Fraction of (function, target) pairs with at least one successful trial.
pub fn table_solved_fraction(table: &RuntimeTable) -> f64 {
    let total = table.len();
    let solved = table
        .entries()
        .filter(|(_, e)| e.success_count() > 0)
        .count();
    solved as f64 / total as f64
}

/// Cross-marker position for a dataset scope (see `table_cross_marker`).
pub fn cross_marker(
    dataset: &DataSet,
    scope: &AggregationScope,
    targets: &TargetSet,
) -> Result<Option<f64>> {
    Ok(table_cross_marker(&scope_table(dataset, scope, targets)?))
}

/// Solved-pair fraction for a dataset scope (see `table_solved_fraction`).
pub fn solved_fraction_dot(
    dataset: &DataSet,
    scope: &AggregationScope,
    targets: &TargetSet,
) -> Result<f64> {
    Ok(table_solved_fraction(&scope_table(
        dataset, scope, targets,
    )?))
}

/// exp(mean(log x)) over finite runtimes. Missing values are not averaged
/// away: any non-finite or non-positive sample is an error.
pub fn geometric_mean_runtime(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::invalid("geometric mean of an empty sample set"));
    }
    if samples.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        return Err(Error::invalid(
            "geometric mean requires finite positive runtimes",
        ));
    }
    let mean_log = samples.iter().map(|x| x.ln()).sum::<f64>() / samples.len() as f64;
    Ok(mean_log.exp())
}

/// Average-runtime summary of one table cell, as the CLI emits it.
#[derive(Debug, Clone, PartialEq)]
pub struct ArtRow {
    pub function_id: String,
    pub dimension: u32,
    pub precision: f64,
    pub n_success: usize,
    pub instance_count: usize,
    pub art: f64,
}

/// Per-cell aRT rows of a table, in key order.
pub fn art_rows(table: &RuntimeTable) -> Vec<ArtRow> {
    table
        .entries()
        .map(|(key, entry)| ArtRow {
            function_id: key.function_id.clone(),
            dimension: key.dimension,
            precision: table.precision_of(key),
            n_success: entry.success_count(),
            instance_count: entry.instance_count(),
            art: art(entry),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ProblemTriple, RunTrace, RuntimeEntry, Step, TableKey, TargetOrigin};

    fn curve(samples: &[Option<f64>]) -> EcdfCurve {
        build_ecdf(samples).unwrap()
    }

    #[test]
    fn build_ecdf_counts_missing_in_denominator() {
        let c = curve(&[Some(1.0), Some(2.0), Some(4.0), None]);
        assert_eq!(c.value_at(2.0), 0.5);
        assert_eq!(c.right_limit(), 0.75);
    }

    #[test]
    fn build_ecdf_all_missing_is_zero() {
        let c = curve(&[None, None]);
        assert_eq!(c.value_at(1e12), 0.0);
        assert_eq!(c.right_limit(), 0.0);
    }

    #[test]
    fn build_ecdf_single_jump() {
        let c = curve(&[Some(7.0), Some(7.0), Some(7.0)]);
        assert_eq!(c.value_at(6.999), 0.0);
        assert_eq!(c.value_at(7.0), 1.0);
    }

    #[test]
    fn build_ecdf_rejects_empty() {
        assert!(build_ecdf(&[]).is_err());
    }

    #[test]
    fn scope_rejects_multiple_dimensions() {
        assert!(AggregationScope::new("rs", &[5, 20], None).is_err());
        assert!(AggregationScope::new("rs", &[], None).is_err());
        assert!(AggregationScope::new("rs", &[5], None).is_ok());
    }

    fn dataset_with(traces: Vec<RunTrace>) -> DataSet {
        let mut ds = DataSet::new();
        for t in traces {
            ds.insert(t).unwrap();
        }
        ds
    }

    fn simple_trace(function: &str, instance: u32, hit_at: Option<u64>, total: u64) -> RunTrace {
        let steps = match hit_at {
            Some(evals) if evals > 1 => vec![
                Step {
                    evals: 1,
                    value: 50.0,
                },
                Step { evals, value: 0.0 },
            ],
            Some(_) => vec![Step {
                evals: 1,
                value: 0.0,
            }],
            None => vec![Step {
                evals: 1,
                value: 50.0,
            }],
        };
        RunTrace::new(
            ProblemTriple::new(function, 5, instance).unwrap(),
            "rs",
            "mini",
            0.0,
            steps,
            total,
        )
        .unwrap()
    }

    #[test]
    fn aggregate_total_count_is_pairs_times_bootstraps() {
        let ds = dataset_with(vec![
            simple_trace("sphere", 1, Some(10), 100),
            simple_trace("sphere", 2, None, 100),
        ]);
        let scope = AggregationScope::new("rs", &[5], None).unwrap();
        let targets = crate::targets::log_targets(1e2, 1e-8, 51).unwrap();
        let c = aggregate_ecdf(&ds, &scope, &targets, 1000, 1).unwrap();
        assert_eq!(c.total_count(), 51_000);
    }

    #[test]
    fn aggregate_unsolved_pairs_stay_in_denominator() {
        // One of two functions never succeeds: right limit is 0.5.
        let ds = dataset_with(vec![
            simple_trace("sphere", 1, Some(10), 100),
            simple_trace("rastrigin", 1, None, 100),
        ]);
        let scope = AggregationScope::new("rs", &[5], None).unwrap();
        let targets = TargetSet::new(vec![1.0], TargetOrigin::Fixed).unwrap();
        let c = aggregate_ecdf(&ds, &scope, &targets, 200, 9).unwrap();
        assert_eq!(c.total_count(), 400);
        assert_eq!(c.right_limit(), 0.5);
        assert_eq!(c.solved_fraction(), 0.5);
    }

    #[test]
    fn aggregate_degenerate_matches_raw_runtimes() {
        // Single function, single target, N = K, all successful: the curve
        // equals the plain ECDF of the observed runtimes.
        let ds = dataset_with(vec![
            simple_trace("sphere", 1, Some(10), 100),
            simple_trace("sphere", 2, Some(20), 100),
            simple_trace("sphere", 3, Some(40), 100),
        ]);
        let scope = AggregationScope::new("rs", &[5], None).unwrap();
        let targets = TargetSet::new(vec![1.0], TargetOrigin::Fixed).unwrap();
        let c = aggregate_ecdf(&ds, &scope, &targets, 3, 77).unwrap();
        let raw = build_ecdf(&[Some(10.0), Some(20.0), Some(40.0)]).unwrap();
        assert_eq!(c.step_points(), raw.step_points());
        assert_eq!(c.cross_x(), None);
    }

    #[test]
    fn aggregate_upside_down_convergence_graph() {
        // K = 1, N = 1: step positions are exactly the hitting times of the
        // reached targets.
        let t = RunTrace::new(
            ProblemTriple::new("sphere", 5, 1).unwrap(),
            "rs",
            "mini",
            0.0,
            vec![
                Step {
                    evals: 3,
                    value: 80.0,
                },
                Step {
                    evals: 9,
                    value: 8.0,
                },
                Step {
                    evals: 27,
                    value: 0.8,
                },
            ],
            1000,
        )
        .unwrap();
        let ds = dataset_with(vec![t]);
        let scope = AggregationScope::new("rs", &[5], None).unwrap();
        let targets = TargetSet::new(vec![100.0, 10.0, 1.0, 0.1], TargetOrigin::Fixed).unwrap();
        let c = aggregate_ecdf(&ds, &scope, &targets, 1, 3).unwrap();
        let xs: Vec<f64> = c.step_points().iter().map(|&(x, _)| x).collect();
        assert_eq!(xs, vec![3.0, 9.0, 27.0]);
        assert_eq!(c.right_limit(), 0.75);
    }

    #[test]
    fn aggregate_is_order_invariant() {
        let traces = vec![
            simple_trace("sphere", 1, Some(10), 100),
            simple_trace("sphere", 2, Some(30), 100),
            simple_trace("rastrigin", 1, Some(20), 100),
            simple_trace("rastrigin", 2, None, 100),
        ];
        let mut reversed = traces.clone();
        reversed.reverse();
        let scope = AggregationScope::new("rs", &[5], None).unwrap();
        let targets = crate::targets::log_targets(1e2, 1e-2, 5).unwrap();
        let a = aggregate_ecdf(&dataset_with(traces), &scope, &targets, 100, 11).unwrap();
        let b = aggregate_ecdf(&dataset_with(reversed), &scope, &targets, 100, 11).unwrap();
        assert_eq!(a, b);
        // Explicit function list in either order changes nothing.
        let scope_listed = AggregationScope::new(
            "rs",
            &[5],
            Some(vec!["rastrigin".to_owned(), "sphere".to_owned()]),
        )
        .unwrap();
        let c = aggregate_ecdf(
            &dataset_with(vec![
                simple_trace("sphere", 1, Some(10), 100),
                simple_trace("sphere", 2, Some(30), 100),
                simple_trace("rastrigin", 1, Some(20), 100),
                simple_trace("rastrigin", 2, None, 100),
            ]),
            &scope_listed,
            &targets,
            100,
            11,
        )
        .unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn cross_marker_median_of_group_maxima() {
        let ts = TargetSet::new(vec![1.0], TargetOrigin::Fixed).unwrap();
        let mut table = RuntimeTable::new(ts);
        for (f, maxes) in [
            ("a", vec![50u64, 100]),
            ("b", vec![200]),
            ("c", vec![400, 100]),
        ] {
            table
                .insert(
                    TableKey::new(f, 5, 0),
                    RuntimeEntry::new(vec![10], maxes).unwrap(),
                )
                .unwrap();
        }
        assert_eq!(table_cross_marker(&table), Some(200.0));
    }

    #[test]
    fn cross_marker_none_when_all_succeed() {
        let ts = TargetSet::new(vec![1.0], TargetOrigin::Fixed).unwrap();
        let mut table = RuntimeTable::new(ts);
        table
            .insert(
                TableKey::new("a", 5, 0),
                RuntimeEntry::new(vec![10, 20], vec![]).unwrap(),
            )
            .unwrap();
        assert_eq!(table_cross_marker(&table), None);
    }

    #[test]
    fn solved_fraction_ratios() {
        let ts = TargetSet::new(vec![1.0, 0.1], TargetOrigin::Fixed).unwrap();
        let mut table = RuntimeTable::new(ts.clone());
        table
            .insert(
                TableKey::new("a", 5, 0),
                RuntimeEntry::new(vec![10], vec![999]).unwrap(),
            )
            .unwrap();
        table
            .insert(
                TableKey::new("a", 5, 1),
                RuntimeEntry::new(vec![], vec![999, 999]).unwrap(),
            )
            .unwrap();
        assert_eq!(table_solved_fraction(&table), 0.5);

        let mut all_solved = RuntimeTable::new(ts.clone());
        all_solved
            .insert(
                TableKey::new("a", 5, 0),
                RuntimeEntry::new(vec![10], vec![]).unwrap(),
            )
            .unwrap();
        assert_eq!(table_solved_fraction(&all_solved), 1.0);

        let mut none_solved = RuntimeTable::new(ts);
        none_solved
            .insert(
                TableKey::new("a", 5, 0),
                RuntimeEntry::new(vec![], vec![7]).unwrap(),
            )
            .unwrap();
        assert_eq!(table_solved_fraction(&none_solved), 0.0);
    }

    #[test]
    fn geometric_mean_hand_values() {
        assert!((geometric_mean_runtime(&[10.0, 1000.0]).unwrap() - 100.0).abs() < 1e-9);
        assert!((geometric_mean_runtime(&[42.0]).unwrap() / 42.0 - 1.0).abs() < 1e-12);
        assert_eq!(geometric_mean_runtime(&[1.0, 1.0, 1.0]).unwrap(), 1.0);
        assert!(geometric_mean_runtime(&[]).is_err());
        assert!(geometric_mean_runtime(&[10.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn ecdf_horizontal_shift_under_scaling() {
        let samples: Vec<Option<f64>> = vec![Some(3.0), Some(10.0), Some(400.0), None];
        let original = build_ecdf(&samples).unwrap();
        let scaled = build_ecdf(
            &samples
                .iter()
                .map(|s| s.map(|x| x * 10.0))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        for x in [0.5, 3.0, 5.0, 10.0, 399.9, 400.0, 1e6] {
            assert_eq!(scaled.value_at(10.0 * x), original.value_at(x));
        }
    }
}
