//! CSV, JSON and SVG renderings of sweep rows.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use scalarent_core::{ExpansionParams, Mode};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::spec::{Axis, Spacing, SweepSpec};
use crate::sweep::{RowValues, SweepRow};

pub const CSV_HEADER: &str =
    "k,m,epsilon,rho,lambda,gamma,amplitude,c,negativity,log_negativity,terms_used,tail_bound,mode";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format '{other}' (expected csv, json, svg or text)")),
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Mode column: `exact` / `paper`, or `error[<mode>]: <message>` for a failed point.
fn mode_cell(row: &SweepRow) -> String {
    match &row.values {
        Ok(_) => row.mode.as_str().to_string(),
        Err(msg) => format!("error[{}]: {}", row.mode.as_str(), sanitize(msg)),
    }
}

/// Error text safe for a CSV cell.
pub(crate) fn sanitize(msg: &str) -> String {
    msg.replace([',', '\n', '\r', '"'], ";")
}

fn parse_mode(s: &str) -> Option<Mode> {
    match s {
        "exact" => Some(Mode::Exact),
        "paper" => Some(Mode::PaperLiteral),
        _ => None,
    }
}

/// Splits a mode cell back into the mode and, for failed points, the message.
fn parse_mode_cell(cell: &str) -> Result<(Mode, Option<String>), String> {
    if let Some(rest) = cell.strip_prefix("error[") {
        let (mode, msg) = rest.split_once("]: ").ok_or_else(|| format!("malformed error marker '{cell}'"))?;
        let mode = parse_mode(mode).ok_or_else(|| format!("unknown mode '{mode}'"))?;
        return Ok((mode, Some(msg.to_string())));
    }
    parse_mode(cell).map(|m| (m, None)).ok_or_else(|| format!("unknown mode '{cell}'"))
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let p = &row.params;
        for x in [p.k, p.m, p.epsilon, p.rho, p.lambda] {
            out.push_str(&fmt_f64(x));
            out.push(',');
        }
        match &row.values {
            Ok(v) => {
                for x in [v.gamma, v.amplitude, v.c, v.negativity, v.log_negativity] {
                    out.push_str(&fmt_f64(x));
                    out.push(',');
                }
                let _ = write!(out, "{},{},", v.terms_used, fmt_f64(v.tail_bound));
            }
            Err(_) => out.push_str(",,,,,,,"),
        }
        out.push_str(&mode_cell(row));
        out.push('\n');
    }
    out
}

/// Inverse of [`to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.split('\n');
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 13 {
            return Err(format!("line {}: expected 13 fields, found {}", i + 2, cells.len()));
        }
        let num = |j: usize| cells[j].parse::<f64>().map_err(|e| format!("line {}, field {}: {e}", i + 2, j + 1));
        let params =
            ExpansionParams { k: num(0)?, m: num(1)?, epsilon: num(2)?, rho: num(3)?, lambda: num(4)? };
        let (mode, error) = parse_mode_cell(cells[12])?;
        let values = match error {
            Some(msg) => Err(msg),
            None => Ok(RowValues {
                gamma: num(5)?,
                amplitude: num(6)?,
                c: num(7)?,
                negativity: num(8)?,
                log_negativity: num(9)?,
                terms_used: cells[10].parse().map_err(|e| format!("line {}: {e}", i + 2))?,
                tail_bound: num(11)?,
            }),
        };
        rows.push(SweepRow { params, mode, values });
    }
    Ok(rows)
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct JsonRow {
    k: f64,
    m: f64,
    epsilon: f64,
    rho: f64,
    lambda: f64,
    gamma: Option<f64>,
    amplitude: Option<f64>,
    c: Option<f64>,
    negativity: Option<f64>,
    log_negativity: Option<f64>,
    terms_used: Option<usize>,
    tail_bound: Option<f64>,
    mode: String,
}

impl From<&SweepRow> for JsonRow {
    fn from(row: &SweepRow) -> Self {
        let p = row.params;
        let v = row.values.as_ref().ok();
        JsonRow {
            k: p.k,
            m: p.m,
            epsilon: p.epsilon,
            rho: p.rho,
            lambda: p.lambda,
            gamma: v.map(|v| v.gamma),
            amplitude: v.map(|v| v.amplitude),
            c: v.map(|v| v.c),
            negativity: v.map(|v| v.negativity),
            log_negativity: v.map(|v| v.log_negativity),
            terms_used: v.map(|v| v.terms_used),
            tail_bound: v.map(|v| v.tail_bound),
            mode: mode_cell(row),
        }
    }
}

pub fn to_json(rows: &[SweepRow]) -> String {
    let json: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
    let mut s = serde_json::to_string_pretty(&json).expect("rows serialize");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Vec<SweepRow>, String> {
    let json: Vec<JsonRow> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    json.into_iter()
        .map(|j| {
            let (mode, error) = parse_mode_cell(&j.mode)?;
            let params = ExpansionParams { k: j.k, m: j.m, epsilon: j.epsilon, rho: j.rho, lambda: j.lambda };
            let values = match error {
                Some(msg) => Err(msg),
                None => {
                    let missing = || format!("row at k={} rho={} has null fields", j.k, j.rho);
                    Ok(RowValues {
                        gamma: j.gamma.ok_or_else(missing)?,
                        amplitude: j.amplitude.ok_or_else(missing)?,
                        c: j.c.ok_or_else(missing)?,
                        negativity: j.negativity.ok_or_else(missing)?,
                        log_negativity: j.log_negativity.ok_or_else(missing)?,
                        terms_used: j.terms_used.ok_or_else(missing)?,
                        tail_bound: j.tail_bound.ok_or_else(missing)?,
                    })
                }
            };
            Ok(SweepRow { params, mode, values })
        })
        .collect()
}

/// Axes of the plot: the sweep axis horizontally, one curve per value of the
/// series axis.
#[derive(Debug, Clone, Copy)]
pub struct PlotAxes {
    pub x: Axis,
    pub log_x: bool,
    pub series: Option<Axis>,
}

impl PlotAxes {
    pub fn from_spec(spec: &SweepSpec) -> Self {
        PlotAxes {
            x: spec.axis,
            log_x: spec.range.spacing == Spacing::Log,
            series: spec.series.as_ref().map(|s| s.axis),
        }
    }
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// log_negativity against the sweep axis, one polyline per series value in
/// order of first appearance. Failed points are left out of their curve.
pub fn to_svg(rows: &[SweepRow], axes: PlotAxes) -> Result<String, CliError> {
    let mut curves: Vec<(Option<f64>, Vec<(f64, f64)>)> = Vec::new();
    for row in rows {
        let key = axes.series.map(|a| a.get(&row.params));
        let idx = match curves.iter().position(|(k, _)| *k == key) {
            Some(i) => i,
            None => {
                curves.push((key, Vec::new()));
                curves.len() - 1
            }
        };
        if let Ok(v) = &row.values {
            curves[idx].1.push((axes.x.get(&row.params), v.log_negativity));
        }
    }
    let points = || curves.iter().flat_map(|(_, pts)| pts.iter().copied());
    if points().next().is_none() {
        return Err(CliError::usage("svg output needs at least one successful row"));
    }

    let tx = |x: f64| if axes.log_x { x.ln() } else { x };
    let (mut x_lo, mut x_hi) = points().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (x, _)| (lo.min(x), hi.max(x)));
    if x_lo == x_hi {
        x_lo -= 0.5 * x_lo.abs().max(1.0);
        x_hi += 0.5 * x_hi.abs().max(1.0);
        if axes.log_x {
            x_lo = x_hi / 4.0;
        }
    }
    let y_max = points().map(|(_, y)| y).fold(0.0, f64::max);
    let y_hi = if y_max > 0.0 { 1.05 * y_max } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + plot_w * (tx(x) - tx(x_lo)) / (tx(x_hi) - tx(x_lo));
    let py = |y: f64| TOP + plot_h * (1.0 - y / y_hi);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let base = TOP + plot_h;
    for (x, anchor) in [(x_lo, "start"), (x_hi, "end")] {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="{anchor}">{}</text>"#,
            px(x),
            base + 16.0,
            tick(x)
        );
    }
    for y in [0.0, y_hi] {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            py(y) + 4.0,
            tick(y)
        );
    }
    let x_label = if axes.log_x { format!("{} (log scale)", axes.x.name()) } else { axes.x.name().to_string() };
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" font-size="14" text-anchor="middle">{x_label}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.3}" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.3})">log_negativity</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, (key, pts)) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y))).collect();
        let label = match (axes.series, key) {
            (Some(a), Some(v)) => format!("{} = {}", a.name(), v),
            _ => "log_negativity".to_string(),
        };
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" data-series="{label}" points="{}"/>"#,
            coords.join(" ")
        );
        let ly = TOP + 18.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT - 170.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.3}" y1="{ly:.3}" x2="{:.3}" y2="{ly:.3}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" font-size="12">{label}</text>"#, lx + 30.0, ly + 4.0);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn tick(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if (1e-3..1e4).contains(&v.abs()) {
        format!("{}", (v * 1e4).round() / 1e4)
    } else {
        format!("{v:.3e}")
    }
}

/// Plain key: value listing, one row after another.
pub fn to_text(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            s.push('\n');
        }
        let p = row.params;
        let _ = writeln!(s, "k              {}", p.k);
        let _ = writeln!(s, "m              {}", p.m);
        let _ = writeln!(s, "epsilon        {}", p.epsilon);
        let _ = writeln!(s, "rho            {}", p.rho);
        let _ = writeln!(s, "lambda         {}", p.lambda);
        let _ = writeln!(s, "mode           {}", row.mode.as_str());
        match &row.values {
            Ok(v) => {
                let _ = writeln!(s, "gamma          {}", fmt_f64(v.gamma));
                let _ = writeln!(s, "amplitude      {}", fmt_f64(v.amplitude));
                let _ = writeln!(s, "c              {}", fmt_f64(v.c));
                let _ = writeln!(s, "negativity     {}", fmt_f64(v.negativity));
                let _ = writeln!(s, "log_negativity {}", fmt_f64(v.log_negativity));
                let _ = writeln!(s, "terms_used     {}", v.terms_used);
                let _ = writeln!(s, "tail_bound     {}", fmt_f64(v.tail_bound));
            }
            Err(msg) => {
                let _ = writeln!(s, "error          {msg}");
            }
        }
    }
    s
}

pub fn render(rows: &[SweepRow], format: Format, axes: PlotAxes) -> Result<String, CliError> {
    match format {
        Format::Csv => Ok(to_csv(rows)),
        Format::Json => Ok(to_json(rows)),
        Format::Svg => to_svg(rows, axes),
        Format::Text => Ok(to_text(rows)),
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, contents).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}
