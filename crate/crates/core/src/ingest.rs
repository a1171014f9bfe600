//! Run-log parsing, writing, and dataset assembly.
//!
//! Run-log format v1 (line-based, UTF-8, `\n` newlines, full-line `#`
//! comments allowed anywhere):
//!
//! ```text
//! format: 1
//! suite: mini
//! algorithm: random-search
//! function: sphere
//! dimension: 5
//! instance: 1
//! reference: -12.5
//!
//! 1 44.75
//! 17 3.0625
//! total: 1000000
//! ```
//!
//! Data lines carry raw indicator values; the parser applies the
//! best-so-far transform, so logs from naive loggers are accepted. The
//! footer records the full trial length, which unsuccessful trials
//! contribute to runtime accounting.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::indicator;
use crate::model::{DataSet, ProblemTriple, RunTrace, Step};

pub const FORMAT_VERSION: u64 = 1;
pub const LOG_EXTENSION: &str = "rlog";

const HEADER_KEYS: [&str; 7] = [
    "format",
    "suite",
    "algorithm",
    "function",
    "dimension",
    "instance",
    "reference",
];

/// Parsed header of a run log.
#[derive(Debug, Clone, PartialEq)]
pub struct LogHeader {
    pub format_version: u64,
    pub suite: String,
    pub algorithm: String,
    pub function_id: String,
    pub dimension: u32,
    pub instance_id: u32,
    pub reference_value: f64,
}

enum Section {
    Header,
    Data,
    AfterFooter,
}

/// Parses one run log. Raw data lines are best-so-far compressed into
/// improvement steps; the footer's total takes precedence over the last
/// recorded evaluation count.
pub fn parse_run_log(text: &str) -> Result<RunTrace> {
    let mut section = Section::Header;
    let mut fields: Vec<(String, String, usize)> = Vec::new();
    let mut raw_steps: Vec<Step> = Vec::new();
    let mut total: Option<u64> = None;
    let mut header_line = 0usize;

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        match section {
            Section::Header => {
                if trimmed.is_empty() {
                    if fields.is_empty() {
                        continue; // leading blank lines
                    }
                    section = Section::Data;
                    continue;
                }
                header_line = lineno;
                let (key, value) = trimmed
                    .split_once(':')
                    .ok_or_else(|| Error::parse(lineno, "expected `key: value` header line"))?;
                fields.push((key.trim().to_owned(), value.trim().to_owned(), lineno));
            }
            Section::Data => {
                if trimmed.is_empty() {
                    return Err(Error::parse(
                        lineno,
                        "unexpected blank line in data section",
                    ));
                }
                if let Some(value) = trimmed.strip_prefix("total:") {
                    total = Some(parse_u64(value.trim(), lineno, "total evaluations")?);
                    section = Section::AfterFooter;
                    continue;
                }
                let mut parts = trimmed.split_whitespace();
                let evals_text = parts
                    .next()
                    .ok_or_else(|| Error::parse(lineno, "expected `<evals> <value>`"))?;
                let value_text = parts
                    .next()
                    .ok_or_else(|| Error::parse(lineno, "expected `<evals> <value>`"))?;
                if parts.next().is_some() {
                    return Err(Error::parse(lineno, "trailing fields on data line"));
                }
                let evals = parse_u64(evals_text, lineno, "evaluation count")?;
                let value = parse_f64(value_text, lineno, "indicator value")?;
                if evals == 0 {
                    return Err(Error::parse(lineno, "evaluation counts start at 1"));
                }
                if let Some(last) = raw_steps.last() {
                    if evals <= last.evals {
                        return Err(Error::parse(
                            lineno,
                            format!(
                                "evaluation counts must be strictly increasing ({} then {})",
                                last.evals, evals
                            ),
                        ));
                    }
                }
                raw_steps.push(Step { evals, value });
            }
            Section::AfterFooter => {
                if !trimmed.is_empty() {
                    return Err(Error::parse(lineno, "content after footer line"));
                }
            }
        }
    }

    let header = build_header(fields, header_line)?;
    let total = total
        .ok_or_else(|| Error::parse(text.lines().count().max(1), "missing `total:` footer line"))?;
    if raw_steps.is_empty() {
        return Err(Error::parse(
            text.lines().count().max(1),
            "log records no evaluations",
        ));
    }

    let steps = indicator::compress(raw_steps);
    let triple = ProblemTriple::new(header.function_id, header.dimension, header.instance_id)?;
    RunTrace::new(
        triple,
        header.algorithm,
        header.suite,
        header.reference_value,
        steps,
        total,
    )
}

fn build_header(fields: Vec<(String, String, usize)>, last_line: usize) -> Result<LogHeader> {
    let mut seen = BTreeSet::new();
    for (key, _, lineno) in &fields {
        if !HEADER_KEYS.contains(&key.as_str()) {
            return Err(Error::parse(*lineno, format!("unknown header key `{key}`")));
        }
        if !seen.insert(key.clone()) {
            return Err(Error::parse(
                *lineno,
                format!("duplicate header key `{key}`"),
            ));
        }
    }
    for key in HEADER_KEYS {
        if !seen.contains(key) {
            return Err(Error::parse(
                last_line.max(1),
                format!("missing header key `{key}`"),
            ));
        }
    }
    let get = |key: &str| -> (&str, usize) {
        fields
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, l)| (v.as_str(), *l))
            .expect("checked above")
    };

    let (format_text, format_line) = get("format");
    let format_version = parse_u64(format_text, format_line, "format version")?;
    if format_version != FORMAT_VERSION {
        return Err(Error::parse(
            format_line,
            format!("unsupported format version {format_version}"),
        ));
    }
    let (dim_text, dim_line) = get("dimension");
    let dimension = parse_u64(dim_text, dim_line, "dimension")?;
    if dimension == 0 || dimension > u32::MAX as u64 {
        return Err(Error::parse(dim_line, "dimension out of range"));
    }
    let (inst_text, inst_line) = get("instance");
    let instance = parse_u64(inst_text, inst_line, "instance")?;
    if instance > u32::MAX as u64 {
        return Err(Error::parse(inst_line, "instance id out of range"));
    }
    let (ref_text, ref_line) = get("reference");
    let reference_value = parse_f64(ref_text, ref_line, "reference value")?;

    Ok(LogHeader {
        format_version,
        suite: get("suite").0.to_owned(),
        algorithm: get("algorithm").0.to_owned(),
        function_id: get("function").0.to_owned(),
        dimension: dimension as u32,
        instance_id: instance as u32,
        reference_value,
    })
}

fn parse_u64(text: &str, lineno: usize, what: &str) -> Result<u64> {
    text.parse::<u64>()
        .map_err(|_| Error::parse(lineno, format!("invalid {what}: `{text}`")))
}

fn parse_f64(text: &str, lineno: usize, what: &str) -> Result<f64> {
    let value = text
        .parse::<f64>()
        .map_err(|_| Error::parse(lineno, format!("invalid {what}: `{text}`")))?;
    if !value.is_finite() {
        return Err(Error::parse(
            lineno,
            format!("{what} must be finite: `{text}`"),
        ));
    }
    Ok(value)
}

/// Writes a trace in canonical form. Floats use the shortest decimal
/// representation that round-trips, so `parse_run_log(write_run_log(t))`
/// reproduces `t` bit-exactly.
pub fn write_run_log(trace: &RunTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format: {FORMAT_VERSION}");
    let _ = writeln!(out, "suite: {}", trace.suite());
    let _ = writeln!(out, "algorithm: {}", trace.algorithm());
    let _ = writeln!(out, "function: {}", trace.triple().function_id);
    let _ = writeln!(out, "dimension: {}", trace.triple().dimension);
    let _ = writeln!(out, "instance: {}", trace.triple().instance_id);
    let _ = writeln!(out, "reference: {}", trace.reference_value());
    out.push('\n');
    for step in trace.steps() {
        let _ = writeln!(out, "{} {}", step.evals, step.value);
    }
    let _ = writeln!(out, "total: {}", trace.total_evaluations());
    out
}

/// Reads and parses a single log file.
pub fn load_run_log(path: &Path) -> Result<RunTrace> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_run_log(&text).map_err(|e| e.with_path(path))
}

/// Collects `.rlog` files from the given files and directories (recursive),
/// in sorted path order.
pub fn collect_log_paths(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            for entry in WalkDir::new(path).sort_by_file_name() {
                let entry = entry.map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    source: e.into(),
                })?;
                if entry.file_type().is_file()
                    && entry.path().extension().and_then(|e| e.to_str()) == Some(LOG_EXTENSION)
                {
                    files.push(entry.into_path());
                }
            }
        } else {
            files.push(path.clone());
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

/// Loads every log under the given files/directories into a `DataSet`.
/// Parse failures are aggregated; key collisions name both files involved.
pub fn load_dataset(paths: &[PathBuf], allow_repetitions: bool) -> Result<DataSet> {
    let files = collect_log_paths(paths)?;
    let mut dataset = DataSet::new();
    let mut failures = Vec::new();
    for file in files {
        match load_run_log(&file) {
            Ok(trace) => {
                if let Err(e) = dataset.insert_traced(
                    trace,
                    Some(file.display().to_string()),
                    allow_repetitions,
                ) {
                    failures.push(e);
                }
            }
            Err(e) => failures.push(e),
        }
    }
    match failures.len() {
        0 => Ok(dataset),
        1 => Err(failures.pop().expect("one failure")),
        _ => Err(Error::Multiple(failures)),
    }
}
