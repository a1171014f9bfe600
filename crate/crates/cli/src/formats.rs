//! CSV read/write for every artifact the CLI exchanges: aRT tables, ECDF
//! curves, runtime tables, selection maps, and runlength targets.
//!
//! All files use `,` separators, `.` decimal points, and `#`-prefixed
//! metadata lines of the form `# key=value`. Floats are written in the
//! shortest decimal form that round-trips.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use runfall_core::ecdf::ArtRow;
use runfall_core::model::{
    EcdfCurve, RuntimeEntry, RuntimeTable, TableKey, TargetOrigin, TargetSet,
};
use runfall_core::refbest::SelectionMap;
use runfall_core::targets::RunlengthTarget;

use crate::svg::XUnit;

/// Splits a CSV payload into metadata (`# key=value`) and data lines.
fn split_lines(text: &str) -> (BTreeMap<String, String>, Vec<(usize, &str)>) {
    let mut meta = BTreeMap::new();
    let mut data = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some((key, value)) = rest.trim().split_once('=') {
                meta.insert(key.trim().to_owned(), value.trim().to_owned());
            }
            continue;
        }
        data.push((idx + 1, trimmed));
    }
    (meta, data)
}

fn parse_float(text: &str, what: &str, line: usize) -> Result<f64> {
    if text == "inf" {
        return Ok(f64::INFINITY);
    }
    text.parse::<f64>()
        .map_err(|_| anyhow!("line {line}: invalid {what} `{text}`"))
}

fn fmt_art(value: f64) -> String {
    if value.is_finite() {
        format!("{value}")
    } else {
        "inf".to_owned()
    }
}

// ---------------------------------------------------------------- aRT CSV

/// Renders per-cell average runtimes, one row per
/// (algorithm, function, dimension, precision).
pub fn write_art_csv(rows: &[(String, ArtRow)]) -> String {
    let mut out = String::from("# runfall art\n");
    out.push_str("algorithm,function,dimension,precision,n_success,K,art\n");
    for (algorithm, row) in rows {
        out.push_str(&format!(
            "{algorithm},{},{},{},{},{},{}\n",
            row.function_id,
            row.dimension,
            row.precision,
            row.n_success,
            row.instance_count,
            fmt_art(row.art)
        ));
    }
    out
}

pub fn parse_art_csv(text: &str) -> Result<Vec<(String, ArtRow)>> {
    let (_, data) = split_lines(text);
    let mut rows = Vec::new();
    for (lineno, line) in data {
        if line.starts_with("algorithm,") {
            continue; // header row
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            bail!("line {lineno}: expected 7 fields, got {}", fields.len());
        }
        rows.push((
            fields[0].to_owned(),
            ArtRow {
                function_id: fields[1].to_owned(),
                dimension: fields[2]
                    .parse()
                    .map_err(|_| anyhow!("line {lineno}: invalid dimension `{}`", fields[2]))?,
                precision: parse_float(fields[3], "precision", lineno)?,
                n_success: fields[4]
                    .parse()
                    .map_err(|_| anyhow!("line {lineno}: invalid success count"))?,
                instance_count: fields[5]
                    .parse()
                    .map_err(|_| anyhow!("line {lineno}: invalid trial count"))?,
                art: parse_float(fields[6], "aRT", lineno)?,
            },
        ));
    }
    Ok(rows)
}

// -------------------------------------------------------------- curve CSV

/// Everything a curve CSV carries besides the step points.
#[derive(Debug, Clone)]
pub struct CurveMeta {
    pub label: String,
    pub algorithm: String,
    pub dimension: u32,
    pub functions: String,
    pub n_targets: usize,
    pub bootstraps: usize,
    pub seed: u64,
    pub x_unit: XUnit,
}

/// Writes an ECDF curve with its reproducibility metadata. The dot sits at
/// twice the largest finite runtime; its position is metadata only.
pub fn write_curve_csv(meta: &CurveMeta, curve: &EcdfCurve) -> String {
    let mut out = String::from("# runfall ecdf\n");
    out.push_str(&format!("# label={}\n", meta.label));
    out.push_str(&format!("# algorithm={}\n", meta.algorithm));
    out.push_str(&format!("# dimension={}\n", meta.dimension));
    out.push_str(&format!("# functions={}\n", meta.functions));
    out.push_str(&format!("# n_targets={}\n", meta.n_targets));
    out.push_str(&format!("# N={}\n", meta.bootstraps));
    out.push_str(&format!("# seed={}\n", meta.seed));
    out.push_str(&format!("# rng={}\n", runfall_core::runtime::RNG_ID));
    out.push_str(&format!("# x_unit={}\n", meta.x_unit.id()));
    out.push_str(&format!("# total={}\n", curve.total_count()));
    if let Some(cx) = curve.cross_x() {
        out.push_str(&format!("# cross_x={cx}\n"));
    }
    out.push_str(&format!("# solved_fraction={}\n", curve.solved_fraction()));
    if let Some(m) = curve.max_finite() {
        out.push_str(&format!("# dot_x={}\n", 2.0 * m));
        // Geometric average of the solved problems' runtimes (the area-left
        // reading of the curve).
        if let Ok(gm) = runfall_core::ecdf::geometric_mean_runtime(curve.finite_runtimes()) {
            out.push_str(&format!("# geometric_mean={gm}\n"));
        }
    }
    out.push_str("x,fraction\n");
    for (x, fraction) in curve.step_points() {
        out.push_str(&format!("{x},{fraction}\n"));
    }
    out
}

/// A curve read back from CSV, with the metadata needed for plotting.
#[derive(Debug, Clone)]
pub struct ParsedCurve {
    pub label: Option<String>,
    pub x_unit: Option<XUnit>,
    pub curve: EcdfCurve,
}

pub fn parse_curve_csv(text: &str) -> Result<ParsedCurve> {
    let (meta, data) = split_lines(text);
    let total: usize = meta
        .get("total")
        .context("curve CSV misses `# total=` metadata")?
        .parse()
        .context("invalid total count")?;
    let solved: f64 = meta
        .get("solved_fraction")
        .context("curve CSV misses `# solved_fraction=` metadata")?
        .parse()
        .context("invalid solved fraction")?;
    let cross_x = meta
        .get("cross_x")
        .map(|t| t.parse::<f64>().context("invalid cross_x"))
        .transpose()?;
    let x_unit = meta.get("x_unit").map(|t| XUnit::from_id(t)).transpose()?;

    let mut finite = Vec::new();
    let mut previous = 0.0f64;
    for (lineno, line) in data {
        if line.starts_with("x,") {
            continue;
        }
        let (x_text, y_text) = line
            .split_once(',')
            .ok_or_else(|| anyhow!("line {lineno}: expected `x,fraction`"))?;
        let x = parse_float(x_text, "runtime", lineno)?;
        let y = parse_float(y_text, "fraction", lineno)?;
        let count = (y * total as f64).round() as i64 - (previous * total as f64).round() as i64;
        if count <= 0 {
            bail!("line {lineno}: non-increasing curve");
        }
        for _ in 0..count {
            finite.push(x);
        }
        previous = y;
    }
    let curve = EcdfCurve::new(finite, total, cross_x, solved)
        .map_err(|e| anyhow!("inconsistent curve CSV: {e}"))?;
    Ok(ParsedCurve {
        label: meta.get("label").cloned(),
        x_unit,
        curve,
    })
}

// -------------------------------------------------------------- table CSV

/// Serializes a runtime table; success and failure lists are
/// semicolon-joined evaluation counts.
pub fn write_table_csv(table: &RuntimeTable) -> String {
    let mut out = String::from("# runfall runtime-table\n");
    let origin = match table.targets().origin() {
        TargetOrigin::Fixed => "fixed",
        TargetOrigin::RunlengthBased => "runlength",
    };
    out.push_str(&format!("# origin={origin}\n"));
    out.push_str("function,dimension,precision,successes,failures\n");
    for (key, entry) in table.entries() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            key.function_id,
            key.dimension,
            table.precision_of(key),
            join_counts(entry.successes()),
            join_counts(entry.failures())
        ));
    }
    out
}

fn join_counts(counts: &[u64]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn split_counts(text: &str, lineno: usize) -> Result<Vec<u64>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| anyhow!("line {lineno}: invalid evaluation count `{t}`"))
        })
        .collect()
}

pub fn parse_table_csv(text: &str) -> Result<RuntimeTable> {
    let (meta, data) = split_lines(text);
    let origin = match meta.get("origin").map(String::as_str) {
        Some("runlength") => TargetOrigin::RunlengthBased,
        _ => TargetOrigin::Fixed,
    };

    struct Row {
        function: String,
        dimension: u32,
        precision: f64,
        successes: Vec<u64>,
        failures: Vec<u64>,
    }
    let mut rows: Vec<Row> = Vec::new();
    for (lineno, line) in data {
        if line.starts_with("function,") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            bail!("line {lineno}: expected 5 fields, got {}", fields.len());
        }
        rows.push(Row {
            function: fields[0].to_owned(),
            dimension: fields[1]
                .parse()
                .map_err(|_| anyhow!("line {lineno}: invalid dimension"))?,
            precision: parse_float(fields[2], "precision", lineno)?,
            successes: split_counts(fields[3], lineno)?,
            failures: split_counts(fields[4], lineno)?,
        });
    }
    if rows.is_empty() {
        bail!("runtime table CSV holds no rows");
    }

    let mut precisions: Vec<f64> = rows.iter().map(|r| r.precision).collect();
    precisions.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite"));
    precisions.dedup();
    let targets = TargetSet::new(precisions.clone(), origin)
        .map_err(|e| anyhow!("invalid precision grid: {e}"))?;

    let mut table = RuntimeTable::new(targets);
    for row in rows {
        let target_index = precisions
            .iter()
            .position(|&p| p == row.precision)
            .expect("collected above");
        let entry = RuntimeEntry::new(row.successes, row.failures)
            .map_err(|e| anyhow!("invalid entry for {}: {e}", row.function))?;
        table
            .insert(
                TableKey::new(row.function, row.dimension, target_index),
                entry,
            )
            .map_err(|e| anyhow!("inconsistent table CSV: {e}"))?;
    }
    Ok(table)
}

// ---------------------------------------------------------- selection CSV

/// Renders the artificial-best selection, one row per table cell.
pub fn write_selection_csv(selection: &SelectionMap, targets: &TargetSet) -> String {
    let mut out = String::from("# runfall best\n");
    out.push_str("function,dimension,precision,algorithm,art\n");
    for (key, choice) in selection.choices() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            key.function_id,
            key.dimension,
            targets.precisions()[key.target_index],
            choice.algorithm,
            fmt_art(choice.art)
        ));
    }
    out
}

// ------------------------------------------------------------ targets CSV

/// Renders runlength-based targets as `budget,precision` rows.
pub fn write_targets_csv(
    picked: &[RunlengthTarget],
    algorithm: &str,
    function: &str,
    dimension: u32,
    unique: bool,
) -> String {
    let mut out = String::from("# runfall targets\n");
    out.push_str(&format!("# algorithm={algorithm}\n"));
    out.push_str(&format!("# function={function}\n"));
    out.push_str(&format!("# dimension={dimension}\n"));
    out.push_str(&format!("# unique={unique}\n"));
    out.push_str("budget,precision\n");
    for t in picked {
        out.push_str(&format!("{},{}\n", t.budget, t.precision));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use runfall_core::model::RuntimeEntry;

    fn sample_table() -> RuntimeTable {
        let targets = TargetSet::new(vec![1e2, 1.0, 1e-2], TargetOrigin::Fixed).unwrap();
        let mut table = RuntimeTable::new(targets);
        for (f, idx, s, fails) in [
            ("sphere", 0usize, vec![1u64, 2, 3], vec![]),
            ("sphere", 1, vec![40], vec![1000u64, 1000]),
            ("sphere", 2, vec![], vec![1000, 1000, 1000]),
        ] {
            table
                .insert(
                    TableKey::new(f, 5, idx),
                    RuntimeEntry::new(s, fails).unwrap(),
                )
                .unwrap();
        }
        table
    }

    #[test]
    fn table_csv_round_trips() {
        let table = sample_table();
        let text = write_table_csv(&table);
        let parsed = parse_table_csv(&text).unwrap();
        assert_eq!(parsed, table);
        assert_eq!(write_table_csv(&parsed), text);
    }

    #[test]
    fn curve_csv_round_trips() {
        let curve = EcdfCurve::new(vec![10.0, 10.0, 250.0], 6, Some(1e6), 0.5).unwrap();
        let meta = CurveMeta {
            label: "rs-d5".to_owned(),
            algorithm: "random-search".to_owned(),
            dimension: 5,
            functions: "all".to_owned(),
            n_targets: 51,
            bootstraps: 1000,
            seed: 42,
            x_unit: XUnit::Evals,
        };
        let text = write_curve_csv(&meta, &curve);
        let parsed = parse_curve_csv(&text).unwrap();
        assert_eq!(parsed.curve, curve);
        assert_eq!(parsed.label.as_deref(), Some("rs-d5"));
        assert_eq!(parsed.x_unit, Some(XUnit::Evals));
        assert!(text.contains("# seed=42\n"));
        assert!(text.contains("# rng=chacha8\n"));
        assert!(text.contains("# N=1000\n"));
        assert!(text.contains("# cross_x=1000000\n"));
        assert!(text.contains("# dot_x=500\n"));
        // geometric mean of {10, 10, 250}: (10 * 10 * 250)^(1/3) ~ 29.24
        assert!(text.contains("# geometric_mean=29.24"), "{text}");
    }

    #[test]
    fn art_csv_round_trips_including_infinite() {
        let rows = vec![
            (
                "rs".to_owned(),
                ArtRow {
                    function_id: "sphere".to_owned(),
                    dimension: 5,
                    precision: 0.01,
                    n_success: 3,
                    instance_count: 15,
                    art: 123.5,
                },
            ),
            (
                "rs".to_owned(),
                ArtRow {
                    function_id: "sphere".to_owned(),
                    dimension: 5,
                    precision: 0.001,
                    n_success: 0,
                    instance_count: 15,
                    art: f64::INFINITY,
                },
            ),
        ];
        let text = write_art_csv(&rows);
        let parsed = parse_art_csv(&text).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0].1, rows[0].1);
        assert!(parsed[1].1.art.is_infinite());
    }
}
