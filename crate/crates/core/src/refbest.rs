//! The artificial best reference algorithm: per (function, dimension,
//! target precision), pick the algorithm with the smallest average runtime
//! and reuse its trial data wholesale. Different cells may source different
//! algorithms, even across targets of the same function. The composed curve
//! is not guaranteed to envelop its members.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{RuntimeTable, TableKey};
use crate::runtime::art;

/// The algorithm chosen for one table cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Choice {
    pub algorithm: String,
    pub art: f64,
}

/// Per-cell winner map over a shared (function, dimension, targets) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionMap {
    choices: BTreeMap<TableKey, Choice>,
}

impl SelectionMap {
    pub fn choices(&self) -> impl Iterator<Item = (&TableKey, &Choice)> {
        self.choices.iter()
    }

    pub fn get(&self, key: &TableKey) -> Option<&Choice> {
        self.choices.get(key)
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }
}

fn check_shared_grid(tables: &BTreeMap<String, RuntimeTable>) -> Result<()> {
    let mut iter = tables.iter();
    let (first_name, first) = iter
        .next()
        .ok_or_else(|| Error::invalid("artificial best needs at least one algorithm table"))?;
    for (name, table) in iter {
        if table.targets() != first.targets() {
            return Err(Error::GridMismatch(format!(
                "{name} and {first_name} use different target sets"
            )));
        }
        let a: Vec<&TableKey> = first.entries().map(|(k, _)| k).collect();
        let b: Vec<&TableKey> = table.entries().map(|(k, _)| k).collect();
        if a != b {
            return Err(Error::GridMismatch(format!(
                "{name} and {first_name} cover different (function, dimension, target) cells"
            )));
        }
    }
    Ok(())
}

/// Selects, per cell, the algorithm with the smallest average runtime.
/// Ties go to the higher success count, then the lexicographically smallest
/// name. Cells where every algorithm has infinite aRT still select one, so
/// failure budgets keep flowing into aggregate denominators.
pub fn select_best(tables: &BTreeMap<String, RuntimeTable>) -> Result<SelectionMap> {
    check_shared_grid(tables)?;
    let reference = tables.values().next().expect("checked non-empty");
    let mut choices = BTreeMap::new();
    for (key, _) in reference.entries() {
        let mut best: Option<(&str, f64, usize)> = None;
        for (name, table) in tables {
            let entry = table
                .get(&key.function_id, key.dimension, key.target_index)
                .expect("shared grid");
            let candidate = (name.as_str(), art(entry), entry.success_count());
            best = Some(match best {
                None => candidate,
                Some(current) => {
                    let (_, cur_art, cur_succ) = current;
                    let (_, cand_art, cand_succ) = candidate;
                    if cand_art < cur_art || (cand_art == cur_art && cand_succ > cur_succ) {
                        candidate
                    } else {
                        current
                    }
                }
            });
        }
        let (name, best_art, _) = best.expect("at least one algorithm");
        choices.insert(
            key.clone(),
            Choice {
                algorithm: name.to_owned(),
                art: best_art,
            },
        );
    }
    Ok(SelectionMap { choices })
}

/// Builds the virtual best table by copying, per cell, the chosen
/// algorithm's successes and failures.
pub fn compose_virtual_dataset(
    selection: &SelectionMap,
    tables: &BTreeMap<String, RuntimeTable>,
) -> Result<RuntimeTable> {
    check_shared_grid(tables)?;
    let reference = tables.values().next().expect("checked non-empty");
    let mut composed = RuntimeTable::new(reference.targets().clone());
    for (key, _) in reference.entries() {
        let choice = selection.get(key).ok_or_else(|| {
            Error::GridMismatch(format!(
                "selection misses cell {}/d{} target #{}",
                key.function_id, key.dimension, key.target_index
            ))
        })?;
        let source = tables.get(&choice.algorithm).ok_or_else(|| {
            Error::GridMismatch(format!(
                "selection references unknown algorithm {}",
                choice.algorithm
            ))
        })?;
        let entry = source
            .get(&key.function_id, key.dimension, key.target_index)
            .expect("shared grid");
        composed.insert(key.clone(), entry.clone())?;
    }
    Ok(composed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{RuntimeEntry, TargetOrigin, TargetSet};

    fn table(cells: &[(&str, u32, &[u64], &[u64])], n_targets: usize) -> RuntimeTable {
        let precisions: Vec<f64> = (0..n_targets).map(|i| 10f64.powi(-(i as i32))).collect();
        let ts = TargetSet::new(precisions, TargetOrigin::Fixed).unwrap();
        let mut t = RuntimeTable::new(ts);
        for (chunk, (f, d, s, fl)) in cells.iter().enumerate() {
            t.insert(
                TableKey::new(*f, *d, chunk % n_targets),
                RuntimeEntry::new(s.to_vec(), fl.to_vec()).unwrap(),
            )
            .unwrap();
        }
        t
    }

    #[test]
    fn single_algorithm_selected_everywhere() {
        let mut tables = BTreeMap::new();
        tables.insert(
            "only".to_owned(),
            table(&[("f1", 5, &[10], &[]), ("f1", 5, &[99], &[])], 2),
        );
        let sel = select_best(&tables).unwrap();
        assert_eq!(sel.len(), 2);
        assert!(sel.choices().all(|(_, c)| c.algorithm == "only"));
    }

    #[test]
    fn smaller_art_wins() {
        let mut tables = BTreeMap::new();
        tables.insert("a".to_owned(), table(&[("f1", 5, &[100], &[])], 1));
        tables.insert("b".to_owned(), table(&[("f1", 5, &[50], &[])], 1));
        let sel = select_best(&tables).unwrap();
        let choice = sel.choices().next().unwrap().1;
        assert_eq!(choice.algorithm, "b");
        assert_eq!(choice.art, 50.0);
    }

    #[test]
    fn infinite_tie_breaks_by_name() {
        let mut tables = BTreeMap::new();
        tables.insert("zeta".to_owned(), table(&[("f1", 5, &[], &[100; 15])], 1));
        tables.insert("beta".to_owned(), table(&[("f1", 5, &[], &[100; 15])], 1));
        let sel = select_best(&tables).unwrap();
        assert_eq!(sel.choices().next().unwrap().1.algorithm, "beta");
    }

    #[test]
    fn tie_prefers_higher_success_count() {
        let mut tables = BTreeMap::new();
        // Same aRT 100: a with 1/2 successes, b with 2/4 but more successes.
        tables.insert("a".to_owned(), table(&[("f1", 5, &[60], &[40])], 1));
        tables.insert("b".to_owned(), table(&[("f1", 5, &[90, 70], &[30, 10])], 1));
        let sel = select_best(&tables).unwrap();
        assert_eq!(sel.choices().next().unwrap().1.algorithm, "b");
    }

    #[test]
    fn inconsistent_grids_rejected() {
        let mut tables = BTreeMap::new();
        tables.insert("a".to_owned(), table(&[("f1", 5, &[10], &[])], 1));
        tables.insert("b".to_owned(), table(&[("f2", 5, &[10], &[])], 1));
        assert!(matches!(select_best(&tables), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn composed_art_is_min_per_cell() {
        let mut tables = BTreeMap::new();
        tables.insert(
            "a".to_owned(),
            table(
                &[("f1", 5, &[10, 30], &[]), ("f1", 5, &[900, 1100], &[])],
                2,
            ),
        );
        tables.insert(
            "b".to_owned(),
            table(
                &[("f1", 5, &[200, 400], &[]), ("f1", 5, &[100, 300], &[])],
                2,
            ),
        );
        let sel = select_best(&tables).unwrap();
        let composed = compose_virtual_dataset(&sel, &tables).unwrap();
        for (key, entry) in composed.entries() {
            let min_art = tables
                .values()
                .map(|t| {
                    art(t
                        .get(&key.function_id, key.dimension, key.target_index)
                        .unwrap())
                })
                .fold(f64::INFINITY, f64::min);
            assert_eq!(art(entry), min_art);
        }
        // Different targets of the same function source different algorithms.
        let sources: Vec<String> = sel.choices().map(|(_, c)| c.algorithm.clone()).collect();
        assert_eq!(sources, vec!["a".to_owned(), "b".to_owned()]);
    }

    #[test]
    fn composition_is_idempotent() {
        let mut tables = BTreeMap::new();
        tables.insert(
            "a".to_owned(),
            table(
                &[("f1", 5, &[10, 30], &[50]), ("f2", 5, &[], &[70, 70, 70])],
                1,
            ),
        );
        tables.insert(
            "b".to_owned(),
            table(
                &[("f1", 5, &[15, 25], &[99]), ("f2", 5, &[500], &[70, 70])],
                1,
            ),
        );
        let sel = select_best(&tables).unwrap();
        let composed = compose_virtual_dataset(&sel, &tables).unwrap();

        let mut solo = BTreeMap::new();
        solo.insert("best".to_owned(), composed.clone());
        let sel2 = select_best(&solo).unwrap();
        let again = compose_virtual_dataset(&sel2, &solo).unwrap();
        assert_eq!(composed, again);
    }

    #[test]
    fn composed_table_feeds_ecdf() {
        let mut tables = BTreeMap::new();
        tables.insert(
            "a".to_owned(),
            table(
                &[("f1", 5, &[10, 30], &[50]), ("f2", 5, &[], &[70, 70, 70])],
                1,
            ),
        );
        tables.insert(
            "b".to_owned(),
            table(
                &[("f1", 5, &[15, 25], &[99]), ("f2", 5, &[500], &[70, 70])],
                1,
            ),
        );
        let sel = select_best(&tables).unwrap();
        let composed = compose_virtual_dataset(&sel, &tables).unwrap();
        let curve = crate::ecdf::table_ecdf(&composed, 100, 4).unwrap();
        assert_eq!(curve.total_count(), 200);
        assert!(curve.right_limit() > 0.0 && curve.right_limit() <= 1.0);
        let points = curve.step_points();
        assert!(points
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 <= w[1].1));
    }
}
