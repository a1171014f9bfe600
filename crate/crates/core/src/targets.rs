//! Target precision construction: fixed log-spaced grids and
//! runlength-based targets derived from reference runtime data.

use crate::error::{Error, Result};
use crate::model::{RuntimeTable, TargetOrigin, TargetSet};
use crate::runtime::art;

/// Increasing reference budgets in function evaluations. Budgets may be
/// non-integer multiples of the dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetSet {
    budgets: Vec<f64>,
}

impl BudgetSet {
    pub fn new(budgets: Vec<f64>) -> Result<Self> {
        if budgets.is_empty() {
            return Err(Error::invalid("budget set must not be empty"));
        }
        if budgets.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
            return Err(Error::invalid("budgets must be finite and positive"));
        }
        for pair in budgets.windows(2) {
            if pair[1] <= pair[0] {
                return Err(Error::invalid(format!(
                    "budgets must be strictly increasing ({} then {})",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(BudgetSet { budgets })
    }

    pub fn budgets(&self) -> &[f64] {
        &self.budgets
    }
}

/// Budget layout for the expensive-optimization scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetVariant {
    /// 0.5n, 1.2n, 3n, 10n, 50n.
    Five,
    /// 31 budgets log-evenly spaced between 0.5n and 50n.
    ThirtyOne,
}

/// `count` precisions uniform on a log scale from `max_precision` down to
/// `min_precision`, both inclusive.
pub fn log_targets(max_precision: f64, min_precision: f64, count: usize) -> Result<TargetSet> {
    if !(max_precision.is_finite() && min_precision.is_finite()) {
        return Err(Error::invalid("precision bounds must be finite"));
    }
    if min_precision <= 0.0 {
        return Err(Error::invalid("precisions must be positive"));
    }
    if max_precision <= min_precision {
        return Err(Error::invalid(format!(
            "max precision must exceed min precision ({max_precision} vs {min_precision})"
        )));
    }
    if count < 2 {
        return Err(Error::invalid("need at least two targets"));
    }
    TargetSet::new(
        log_spaced(max_precision, min_precision, count),
        TargetOrigin::Fixed,
    )
}

/// `count` values log-uniform from `first` to `last` inclusive, endpoints exact.
fn log_spaced(first: f64, last: f64, count: usize) -> Vec<f64> {
    let lg_first = first.log10();
    let lg_last = last.log10();
    (0..count)
        .map(|i| {
            if i == 0 {
                first
            } else if i == count - 1 {
                last
            } else {
                let frac = i as f64 / (count - 1) as f64;
                10f64.powf(lg_first + frac * (lg_last - lg_first))
            }
        })
        .collect()
}

/// Reference budgets for the expensive scenario, scaled by the dimension.
pub fn default_expensive_budgets(dimension: u32, variant: BudgetVariant) -> BudgetSet {
    assert!(dimension >= 1, "dimension must be at least 1");
    let n = dimension as f64;
    let budgets = match variant {
        BudgetVariant::Five => vec![0.5 * n, 1.2 * n, 3.0 * n, 10.0 * n, 50.0 * n],
        BudgetVariant::ThirtyOne => log_spaced(0.5 * n, 50.0 * n, 31),
    };
    BudgetSet::new(budgets).expect("constructed increasing")
}

/// One runlength-based target: the precision chosen for a reference budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunlengthTarget {
    pub budget: f64,
    pub precision: f64,
}

/// Derives runlength-based targets from reference data.
///
/// For each budget in ascending order the easiest (largest) candidate
/// precision whose reference average runtime exceeds the budget is chosen;
/// with `unique`, precisions already chosen for a smaller budget are
/// skipped. When no candidate qualifies, the final (smallest) precision is
/// taken regardless of uniqueness. An entry with no successes has infinite
/// average runtime and therefore exceeds every budget.
///
/// The reference table must cover every candidate precision of its target
/// set for the given (function, dimension) group.
pub fn runlength_targets(
    reference: &RuntimeTable,
    function_id: &str,
    dimension: u32,
    budgets: &BudgetSet,
    unique: bool,
) -> Result<Vec<RunlengthTarget>> {
    let candidates = reference.targets().precisions();
    let arts: Vec<f64> = (0..candidates.len())
        .map(|idx| {
            reference
                .get(function_id, dimension, idx)
                .map(art)
                .ok_or_else(|| {
                    Error::invalid(format!(
                        "reference table misses {function_id}/d{dimension} target #{idx}"
                    ))
                })
        })
        .collect::<Result<_>>()?;

    let final_index = candidates.len() - 1;
    let mut chosen_indices: Vec<usize> = Vec::new();
    let mut out = Vec::with_capacity(budgets.budgets().len());
    for &budget in budgets.budgets() {
        let pick = (0..candidates.len())
            .find(|&idx| arts[idx] > budget && !(unique && chosen_indices.contains(&idx)))
            .unwrap_or(final_index);
        chosen_indices.push(pick);
        out.push(RunlengthTarget {
            budget,
            precision: candidates[pick],
        });
    }
    Ok(out)
}

/// The distinct precisions of a runlength derivation as a `TargetSet`
/// (sorted easiest first), for downstream aggregation.
pub fn runlength_target_set(targets: &[RunlengthTarget]) -> Result<TargetSet> {
    let mut precisions: Vec<f64> = targets.iter().map(|t| t.precision).collect();
    precisions.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite"));
    precisions.dedup();
    TargetSet::new(precisions, TargetOrigin::RunlengthBased)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{RuntimeEntry, TableKey};

    #[test]
    fn log_targets_51_grid() {
        let ts = log_targets(1e2, 1e-8, 51).unwrap();
        let p = ts.precisions();
        assert_eq!(p.len(), 51);
        assert_eq!(p[0], 1e2);
        assert_eq!(p[50], 1e-8);
        let ratio = 10f64.powf(0.2);
        for pair in p.windows(2) {
            assert!((pair[0] / pair[1] - ratio).abs() < 1e-9, "{:?}", pair);
        }
    }

    #[test]
    fn log_targets_hand_spacing() {
        let ts = log_targets(1e2, 1e-2, 5).unwrap();
        let expect = [1e2, 1e1, 1e0, 1e-1, 1e-2];
        for (got, want) in ts.precisions().iter().zip(expect) {
            assert!((got / want - 1.0).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn log_targets_rejects_degenerate_bounds() {
        assert!(log_targets(1.0, 1.0, 3).is_err());
        assert!(log_targets(0.1, 1.0, 3).is_err());
        assert!(log_targets(1.0, 0.1, 1).is_err());
        assert!(log_targets(1.0, 0.0, 3).is_err());
    }

    #[test]
    fn log_targets_symmetric_under_reciprocal() {
        // With max * min = 1 the grid is its own reversal under reciprocal.
        let ts = log_targets(1e3, 1e-3, 7).unwrap();
        let p = ts.precisions();
        for i in 0..p.len() {
            let mirrored = 1.0 / p[p.len() - 1 - i];
            assert!((p[i] / mirrored - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn five_budgets_scaled_by_dimension() {
        let b = default_expensive_budgets(5, BudgetVariant::Five);
        assert_eq!(b.budgets(), &[2.5, 6.0, 15.0, 50.0, 250.0]);
        let b = default_expensive_budgets(1, BudgetVariant::Five);
        assert_eq!(b.budgets(), &[0.5, 1.2, 3.0, 10.0, 50.0]);
    }

    #[test]
    fn thirtyone_budgets_log_even() {
        let b = default_expensive_budgets(5, BudgetVariant::ThirtyOne);
        let v = b.budgets();
        assert_eq!(v.len(), 31);
        assert_eq!(v[0], 2.5);
        assert_eq!(v[30], 250.0);
        let ratio = v[1] / v[0];
        for pair in v.windows(2) {
            assert!((pair[1] / pair[0] - ratio).abs() < 1e-9);
        }
    }

    fn reference_table(arts: &[(f64, &[u64], &[u64])]) -> RuntimeTable {
        // (precision, successes, failures) triples, descending precision.
        let precisions = arts.iter().map(|(p, _, _)| *p).collect();
        let ts = TargetSet::new(precisions, TargetOrigin::Fixed).unwrap();
        let mut table = RuntimeTable::new(ts);
        for (idx, (_, s, f)) in arts.iter().enumerate() {
            table
                .insert(
                    TableKey::new("sphere", 5, idx),
                    RuntimeEntry::new(s.to_vec(), f.to_vec()).unwrap(),
                )
                .unwrap();
        }
        table
    }

    #[test]
    fn runlength_picks_largest_exceeding_target() {
        // aRTs: precision 1 -> 10, 0.1 -> 100, 0.01 -> 1000.
        let table = reference_table(&[(1.0, &[10], &[]), (0.1, &[100], &[]), (0.01, &[1000], &[])]);
        let budgets = BudgetSet::new(vec![50.0, 500.0]).unwrap();
        let picked = runlength_targets(&table, "sphere", 5, &budgets, false).unwrap();
        assert_eq!(picked[0].precision, 0.1);
        assert_eq!(picked[1].precision, 0.01);
    }

    #[test]
    fn runlength_falls_back_to_final_target() {
        let table = reference_table(&[(1.0, &[10], &[]), (0.1, &[100], &[]), (0.01, &[1000], &[])]);
        let budgets = BudgetSet::new(vec![5000.0]).unwrap();
        let picked = runlength_targets(&table, "sphere", 5, &budgets, false).unwrap();
        assert_eq!(picked[0].precision, 0.01);
    }

    #[test]
    fn runlength_unique_takes_next_harder() {
        let table = reference_table(&[(1.0, &[10], &[]), (0.1, &[100], &[]), (0.01, &[1000], &[])]);
        let budgets = BudgetSet::new(vec![50.0, 60.0]).unwrap();
        let picked = runlength_targets(&table, "sphere", 5, &budgets, true).unwrap();
        assert_eq!(picked[0].precision, 0.1);
        assert_eq!(picked[1].precision, 0.01);
        // Without uniqueness the second budget repeats the 0.1 target.
        let repeat = runlength_targets(&table, "sphere", 5, &budgets, false).unwrap();
        assert_eq!(repeat[1].precision, 0.1);
    }

    #[test]
    fn runlength_final_target_may_repeat_under_unique() {
        let table = reference_table(&[(1.0, &[10], &[]), (0.1, &[20], &[])]);
        let budgets = BudgetSet::new(vec![100.0, 200.0]).unwrap();
        let picked = runlength_targets(&table, "sphere", 5, &budgets, true).unwrap();
        assert_eq!(picked[0].precision, 0.1);
        assert_eq!(picked[1].precision, 0.1);
    }

    #[test]
    fn runlength_infinite_art_exceeds_every_budget() {
        // Zero successes makes the easiest target infinitely hard on average.
        let table = reference_table(&[(1.0, &[], &[500, 500]), (0.1, &[], &[500, 500])]);
        let budgets = BudgetSet::new(vec![1e9]).unwrap();
        let picked = runlength_targets(&table, "sphere", 5, &budgets, false).unwrap();
        assert_eq!(picked[0].precision, 1.0);
    }

    #[test]
    fn runlength_requires_full_coverage() {
        let ts = TargetSet::new(vec![1.0, 0.1], TargetOrigin::Fixed).unwrap();
        let mut table = RuntimeTable::new(ts);
        table
            .insert(
                TableKey::new("sphere", 5, 0),
                RuntimeEntry::new(vec![5], vec![]).unwrap(),
            )
            .unwrap();
        let budgets = BudgetSet::new(vec![10.0]).unwrap();
        assert!(runlength_targets(&table, "sphere", 5, &budgets, false).is_err());
    }

    #[test]
    fn runlength_output_non_increasing_in_precision() {
        let table = reference_table(&[
            (100.0, &[2], &[]),
            (10.0, &[40], &[]),
            (1.0, &[600], &[]),
            (0.1, &[8000], &[]),
        ]);
        let budgets = BudgetSet::new(vec![1.0, 30.0, 500.0, 7000.0, 99999.0]).unwrap();
        let picked = runlength_targets(&table, "sphere", 5, &budgets, false).unwrap();
        for pair in picked.windows(2) {
            assert!(pair[1].precision <= pair[0].precision);
        }
    }
}
