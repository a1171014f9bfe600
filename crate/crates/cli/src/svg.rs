//! Deterministic SVG emitters for ECDF and scaling figures.
//!
//! Charts are built by direct string assembly on a fixed 800x600 viewBox
//! with a fixed color cycle: identical input always yields byte-identical
//! output. Coordinates are formatted with two decimals.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use runfall_core::model::EcdfCurve;
use runfall_core::runtime::ScalingPoint;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 55.0;

const COLORS: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Unit of the runtime axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XUnit {
    Evals,
    EvalsPerDimension,
}

impl XUnit {
    pub fn label(self) -> &'static str {
        match self {
            XUnit::Evals => "function evaluations",
            XUnit::EvalsPerDimension => "function evaluations / dimension",
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            XUnit::Evals => "evals",
            XUnit::EvalsPerDimension => "evals-per-dimension",
        }
    }

    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "evals" => Ok(XUnit::Evals),
            "evals-per-dimension" => Ok(XUnit::EvalsPerDimension),
            other => bail!("unknown x unit `{other}`"),
        }
    }
}

/// Figure kind plus axis switches. ECDF plots fix the y range to [0, 1];
/// scaling plots are log-log by default.
#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub log_x: bool,
    pub log_y: bool,
    pub x_unit: XUnit,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec {
            log_x: true,
            log_y: true,
            x_unit: XUnit::Evals,
        }
    }
}

/// One labeled curve of an ECDF figure.
#[derive(Debug, Clone)]
pub struct LabeledCurve {
    pub label: String,
    pub curve: EcdfCurve,
}

/// One labeled series of a scaling figure.
#[derive(Debug, Clone)]
pub struct LabeledSeries {
    pub label: String,
    pub points: Vec<ScalingPoint>,
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

struct Frame {
    x_lo: f64, // log10 of left edge
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
    log_y: bool,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        MARGIN_LEFT + (x.log10() - self.x_lo) / (self.x_hi - self.x_lo) * w
    }

    fn py(&self, y: f64) -> f64 {
        let h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let v = if self.log_y { y.log10() } else { y };
        MARGIN_TOP + (self.y_hi - v) / (self.y_hi - self.y_lo) * h
    }
}

fn document_open(out: &mut String) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"13\">"
    );
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
}

fn plot_border(out: &mut String) {
    let _ = writeln!(
        out,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        fmt2(MARGIN_LEFT),
        fmt2(MARGIN_TOP),
        fmt2(WIDTH - MARGIN_LEFT - MARGIN_RIGHT),
        fmt2(HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    );
}

fn x_decade_ticks(out: &mut String, frame: &Frame) {
    let bottom = HEIGHT - MARGIN_BOTTOM;
    let mut k = frame.x_lo.ceil() as i64;
    while (k as f64) <= frame.x_hi + 1e-9 {
        let px = frame.px(10f64.powi(k as i32));
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\"/>",
            fmt2(px),
            fmt2(MARGIN_TOP),
            fmt2(bottom)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">1e{}</text>",
            fmt2(px),
            fmt2(bottom + 18.0),
            k
        );
        k += 1;
    }
}

fn axis_titles(out: &mut String, x_title: &str, y_title: &str) {
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        fmt2((MARGIN_LEFT + WIDTH - MARGIN_RIGHT) / 2.0),
        fmt2(HEIGHT - 12.0),
        xml_escape(x_title)
    );
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>",
        fmt2((MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2.0),
        fmt2((MARGIN_TOP + HEIGHT - MARGIN_BOTTOM) / 2.0),
        xml_escape(y_title)
    );
}

fn legend(out: &mut String, labels: &[&str]) {
    for (i, label) in labels.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let y = MARGIN_TOP + 16.0 + 18.0 * i as f64;
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>",
            fmt2(MARGIN_LEFT + 10.0),
            fmt2(y - 4.0),
            fmt2(MARGIN_LEFT + 34.0),
            fmt2(y - 4.0),
            color
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\">{}</text>",
            fmt2(MARGIN_LEFT + 40.0),
            fmt2(y),
            xml_escape(label)
        );
    }
}

/// Renders one or more ECDF curves as a semilog-x step plot with the cross
/// marker (median maximal unsuccessful length) and the solved-fraction dot
/// at twice the largest finite runtime.
pub fn render_ecdf_svg(curves: &[LabeledCurve], spec: &PlotSpec) -> Result<String> {
    if curves.is_empty() {
        bail!("no curves to plot");
    }
    if !spec.log_x {
        bail!("ECDF figures use a logarithmic runtime axis");
    }

    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    for lc in curves {
        for (x, _) in lc.curve.step_points() {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
        }
        if let Some(m) = lc.curve.max_finite() {
            x_max = x_max.max(2.0 * m);
        }
        if let Some(cx) = lc.curve.cross_x() {
            x_min = x_min.min(cx);
            x_max = x_max.max(cx);
        }
    }
    if !x_min.is_finite() {
        // Curves may consist entirely of missing runtimes.
        x_min = 1.0;
        x_max = 10.0;
    }
    let x_lo = x_min.log10().floor();
    let mut x_hi = x_max.log10().ceil();
    if x_hi <= x_lo {
        x_hi = x_lo + 1.0;
    }
    let frame = Frame {
        x_lo,
        x_hi,
        y_lo: 0.0,
        y_hi: 1.0,
        log_y: false,
    };

    let mut out = String::new();
    document_open(&mut out);
    x_decade_ticks(&mut out, &frame);
    // y ticks every 0.2
    for i in 0..=5 {
        let y = i as f64 * 0.2;
        let py = frame.py(y);
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#dddddd\"/>",
            fmt2(MARGIN_LEFT),
            fmt2(py),
            fmt2(WIDTH - MARGIN_RIGHT)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{y:.1}</text>",
            fmt2(MARGIN_LEFT - 8.0),
            fmt2(py + 4.0)
        );
    }
    plot_border(&mut out);

    for (i, lc) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points = lc.curve.step_points();
        let mut d = format!(
            "M {} {}",
            fmt2(frame.px(10f64.powf(frame.x_lo))),
            fmt2(frame.py(0.0))
        );
        for &(x, y) in &points {
            let _ = write!(d, " H {} V {}", fmt2(frame.px(x)), fmt2(frame.py(y)));
        }
        let _ = write!(d, " H {}", fmt2(frame.px(10f64.powf(frame.x_hi))));
        let _ = writeln!(
            out,
            "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>"
        );

        if let Some(cx) = lc.curve.cross_x() {
            let px = frame.px(cx);
            let py = frame.py(lc.curve.value_at(cx));
            for (dx1, dy1, dx2, dy2) in [(-5.0, -5.0, 5.0, 5.0), (-5.0, 5.0, 5.0, -5.0)] {
                let _ = writeln!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" \
                     stroke-width=\"3\" class=\"cross\"/>",
                    fmt2(px + dx1),
                    fmt2(py + dy1),
                    fmt2(px + dx2),
                    fmt2(py + dy2)
                );
            }
        }
        if let Some(m) = lc.curve.max_finite() {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{color}\" class=\"dot\"/>",
                fmt2(frame.px(2.0 * m)),
                fmt2(frame.py(lc.curve.solved_fraction()))
            );
        }
    }

    axis_titles(&mut out, spec.x_unit.label(), "fraction of problems solved");
    let labels: Vec<&str> = curves.iter().map(|c| c.label.as_str()).collect();
    legend(&mut out, &labels);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Renders average-runtime scaling series as a log-log plot of aRT divided
/// by dimension against dimension. Missing points (no successes) appear as
/// upward arrows at the top of the plot.
pub fn render_scaling_svg(series: &[LabeledSeries], spec: &PlotSpec) -> Result<String> {
    if series.is_empty() {
        bail!("no series to plot");
    }
    if !spec.log_x || !spec.log_y {
        bail!("scaling figures use logarithmic axes");
    }

    let mut dims: Vec<u32> = Vec::new();
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for p in &s.points {
            dims.push(p.dimension);
            if let Some(v) = p.art_over_dim {
                y_min = y_min.min(v);
                y_max = y_max.max(v);
            }
        }
    }
    dims.sort_unstable();
    dims.dedup();
    if dims.is_empty() {
        bail!("scaling series contain no points");
    }
    if !y_min.is_finite() {
        y_min = 1.0;
        y_max = 10.0;
    }
    let x_lo = (dims[0] as f64).log10() - 0.1;
    let x_hi = (*dims.last().expect("non-empty") as f64).log10() + 0.1;
    let y_lo = y_min.log10().floor();
    let mut y_hi = y_max.log10().ceil();
    if y_hi <= y_lo {
        y_hi = y_lo + 1.0;
    }
    let frame = Frame {
        x_lo,
        x_hi,
        y_lo,
        y_hi,
        log_y: true,
    };

    let mut out = String::new();
    document_open(&mut out);
    // x tick per dimension present
    let bottom = HEIGHT - MARGIN_BOTTOM;
    for &d in &dims {
        let px = frame.px(d as f64);
        let _ = writeln!(
            out,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\"/>",
            fmt2(px),
            fmt2(MARGIN_TOP),
            fmt2(bottom)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            fmt2(px),
            fmt2(bottom + 18.0),
            d
        );
    }
    // y decade ticks
    let mut k = y_lo.ceil() as i64;
    while (k as f64) <= y_hi + 1e-9 {
        let py = frame.py(10f64.powi(k as i32));
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#dddddd\"/>",
            fmt2(MARGIN_LEFT),
            fmt2(py),
            fmt2(WIDTH - MARGIN_RIGHT)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">1e{}</text>",
            fmt2(MARGIN_LEFT - 8.0),
            fmt2(py + 4.0),
            k
        );
        k += 1;
    }
    plot_border(&mut out);

    for (i, s) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let finite: Vec<(f64, f64)> = s
            .points
            .iter()
            .filter_map(|p| p.art_over_dim.map(|v| (p.dimension as f64, v)))
            .collect();
        if finite.len() > 1 {
            let coords: Vec<String> = finite
                .iter()
                .map(|&(d, v)| format!("{},{}", fmt2(frame.px(d)), fmt2(frame.py(v))))
                .collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
                coords.join(" ")
            );
        }
        for &(d, v) in &finite {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{color}\"/>",
                fmt2(frame.px(d)),
                fmt2(frame.py(v))
            );
        }
        for p in &s.points {
            if p.art_over_dim.is_none() {
                // No success in this dimension: the true value lies above
                // everything measurable.
                let px = frame.px(p.dimension as f64);
                let py = MARGIN_TOP + 10.0;
                let _ = writeln!(
                    out,
                    "<path d=\"M {} {} L {} {} L {} {} Z\" fill=\"{color}\" class=\"arrow\"/>",
                    fmt2(px),
                    fmt2(py - 8.0),
                    fmt2(px - 5.0),
                    fmt2(py + 6.0),
                    fmt2(px + 5.0),
                    fmt2(py + 6.0)
                );
            }
        }
    }

    let x_title = "dimension";
    let y_title = match spec.x_unit {
        XUnit::Evals => "aRT / dimension (evaluations)",
        XUnit::EvalsPerDimension => "aRT / dimension (evaluations)",
    };
    axis_titles(&mut out, x_title, y_title);
    let labels: Vec<&str> = series.iter().map(|s| s.label.as_str()).collect();
    legend(&mut out, &labels);
    out.push_str("</svg>\n");
    Ok(out)
}
