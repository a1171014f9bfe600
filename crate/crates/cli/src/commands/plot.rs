//! `runfall plot`: render emitted CSVs as SVG figures.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};

use runfall_core::runtime::ScalingPoint;

use super::usage;
use crate::formats::{parse_art_csv, parse_curve_csv};
use crate::svg::{
    render_ecdf_svg, render_scaling_svg, LabeledCurve, LabeledSeries, PlotSpec, XUnit,
};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    /// Step plot of one or more ECDF curve CSVs.
    Ecdf,
    /// Log-log aRT/dimension vs dimension from an `art` CSV.
    Scaling,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// Figure kind.
    #[arg(long, value_enum)]
    pub kind: PlotKind,

    /// Input CSV files: `ecdf` outputs for --kind ecdf, `art` outputs for
    /// --kind scaling.
    #[arg(long = "in", value_name = "PATH", required = true)]
    pub inputs: Vec<PathBuf>,

    /// Output SVG file.
    #[arg(long)]
    pub out: PathBuf,

    /// Target precision to slice the scaling plot at (scaling only).
    #[arg(long)]
    pub precision: Option<f64>,
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn plot_ecdf(args: &PlotArgs) -> Result<String> {
    if args.precision.is_some() {
        return Err(usage("--precision only applies to --kind scaling"));
    }
    let mut curves = Vec::new();
    let mut x_unit: Option<XUnit> = None;
    for path in &args.inputs {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let parsed = parse_curve_csv(&text).with_context(|| format!("in {}", path.display()))?;
        if let Some(unit) = parsed.x_unit {
            match x_unit {
                None => x_unit = Some(unit),
                Some(seen) if seen != unit => {
                    anyhow::bail!("curves mix x units ({} vs {})", seen.id(), unit.id())
                }
                _ => {}
            }
        }
        curves.push(LabeledCurve {
            label: parsed.label.unwrap_or_else(|| file_stem(path)),
            curve: parsed.curve,
        });
    }
    let spec = PlotSpec {
        x_unit: x_unit.unwrap_or(XUnit::Evals),
        ..PlotSpec::default()
    };
    render_ecdf_svg(&curves, &spec)
}

fn plot_scaling(args: &PlotArgs) -> Result<String> {
    let precision = args
        .precision
        .ok_or_else(|| usage("--kind scaling needs --precision"))?;

    let mut rows = Vec::new();
    for path in &args.inputs {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        rows.extend(parse_art_csv(&text).with_context(|| format!("in {}", path.display()))?);
    }

    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * a.abs().max(b.abs());
    let selected: Vec<_> = rows
        .iter()
        .filter(|(_, row)| close(row.precision, precision))
        .collect();
    if selected.is_empty() {
        let mut available: Vec<f64> = rows.iter().map(|(_, r)| r.precision).collect();
        available.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite"));
        available.dedup();
        anyhow::bail!(
            "no rows at precision {precision}; available: {}",
            available
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }

    // One series per (algorithm, function), points by ascending dimension.
    let mut series: Vec<LabeledSeries> = Vec::new();
    for (algorithm, row) in selected {
        let label = format!("{algorithm} {}", row.function_id);
        let point = ScalingPoint {
            dimension: row.dimension,
            art_over_dim: row
                .art
                .is_finite()
                .then(|| row.art / f64::from(row.dimension)),
        };
        match series.iter_mut().find(|s| s.label == label) {
            Some(s) => s.points.push(point),
            None => series.push(LabeledSeries {
                label,
                points: vec![point],
            }),
        }
    }
    series.sort_by(|a, b| a.label.cmp(&b.label));
    for s in &mut series {
        s.points.sort_by_key(|p| p.dimension);
    }
    render_scaling_svg(&series, &PlotSpec::default())
}

pub fn main(args: PlotArgs) -> Result<()> {
    let svg = match args.kind {
        PlotKind::Ecdf => plot_ecdf(&args)?,
        PlotKind::Scaling => plot_scaling(&args)?,
    };
    std::fs::write(&args.out, svg)
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    eprintln!("wrote {}", args.out.display());
    Ok(())
}
