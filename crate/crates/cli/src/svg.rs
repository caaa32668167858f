//! Minimal SVG figures: spectra as polylines, interaction sweeps as heat maps.

use std::fmt::Write as _;

use crate::error::{CliError, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Vertical guide at a predicted line position.
#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub label: String,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    pub markers: Vec<Marker>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HeatMap {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `values[i][k]` at `(x[k], y[i])`.
    pub values: Vec<Vec<f64>>,
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        let span = if self.x1 > self.x0 { self.x1 - self.x0 } else { 1.0 };
        LEFT + (x - self.x0) / span * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let span = if self.y1 > self.y0 { self.y1 - self.y0 } else { 1.0 };
        HEIGHT - BOTTOM - (y - self.y0) / span * (HEIGHT - TOP - BOTTOM)
    }
}

/// Round tick positions covering `[lo, hi]`, spaced 1, 2 or 5 times a
/// power of ten.
pub fn ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).map(|t| if t.abs() < 1e-12 * step { 0.0 } else { t }).collect()
}

fn tick_label(t: f64) -> String {
    let s = format!("{t:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
}

fn axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let (bx, by) = (LEFT, HEIGHT - BOTTOM);
    let _ = writeln!(
        out,
        r#"<rect class="frame" x="{bx}" y="{TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - LEFT - RIGHT,
        HEIGHT - TOP - BOTTOM
    );
    for t in ticks(f.x0, f.x1, 8) {
        let x = f.px(t);
        let _ = writeln!(out, r#"<line x1="{x:.2}" y1="{by}" x2="{x:.2}" y2="{}" stroke="black"/>"#, by + 5.0);
        let _ = writeln!(out, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#, by + 18.0, tick_label(t));
    }
    for t in ticks(f.y0, f.y1, 6) {
        let y = f.py(t);
        let _ = writeln!(out, r#"<line x1="{}" y1="{y:.2}" x2="{bx}" y2="{y:.2}" stroke="black"/>"#, bx - 5.0);
        let _ = writeln!(out, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, bx - 8.0, y + 4.0, tick_label(t));
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">{1}</text>"#,
        (TOP + HEIGHT - BOTTOM) / 2.0,
        escape(y_label)
    );
}

fn finite_range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.filter(|v| v.is_finite()).fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

pub fn render_lines(plot: &LinePlot) -> Result<String> {
    if plot.series.iter().all(|s| s.x.is_empty()) {
        return Err(CliError::EmptyData);
    }
    // The frame widens to show predicted lines beyond the scanned window.
    let xs = plot.series.iter().flat_map(|s| s.x.iter().copied()).chain(plot.markers.iter().map(|m| m.x));
    let (x0, x1) = finite_range(xs).ok_or(CliError::EmptyData)?;
    let (_, y_max) = finite_range(plot.series.iter().flat_map(|s| s.y.iter().copied())).ok_or(CliError::EmptyData)?;
    let y1 = if y_max > 0.0 { y_max * 1.05 } else { 1.0 };
    let f = Frame { x0, x1, y0: 0.0, y1 };

    let mut out = String::new();
    header(&mut out, &plot.title);
    axes(&mut out, &f, &plot.x_label, &plot.y_label);
    for m in &plot.markers {
        if !m.x.is_finite() {
            continue;
        }
        let x = f.px(m.x);
        let _ = writeln!(
            out,
            r##"<line class="marker" x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{}" stroke="#888888" stroke-dasharray="4 3"><title>{} {}</title></line>"##,
            HEIGHT - BOTTOM,
            escape(&m.label),
            tick_label(m.x)
        );
    }
    for (i, s) in plot.series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> =
            s.x.iter().zip(&s.y).map(|(&x, &y)| format!("{:.2},{:.2}", f.px(x), f.py(y))).collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
            points.join(" "),
            escape(&s.label)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{colour}" text-anchor="end">{}</text>"#,
            WIDTH - RIGHT - 6.0,
            TOP + 16.0 + 15.0 * i as f64,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Linear blue-to-yellow colour scale.
fn colour(t: f64) -> String {
    const STOPS: [(f64, [f64; 3]); 4] =
        [(0.0, [68.0, 1.0, 84.0]), (0.33, [49.0, 104.0, 142.0]), (0.66, [53.0, 183.0, 121.0]), (1.0, [253.0, 231.0, 37.0])];
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 0.0 };
    let k = STOPS.iter().position(|s| s.0 >= t).unwrap_or(3).max(1);
    let (a, b) = (STOPS[k - 1], STOPS[k]);
    let w = (t - a.0) / (b.0 - a.0);
    let c: Vec<u8> = (0..3).map(|i| (a.1[i] + w * (b.1[i] - a.1[i])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// One rectangle per `(x, y)` cell, each centred on its sample.
pub fn render_heatmap(map: &HeatMap) -> Result<String> {
    if map.x.is_empty() || map.y.is_empty() || map.values.len() != map.y.len() {
        return Err(CliError::EmptyData);
    }
    if map.values.iter().any(|row| row.len() != map.x.len()) {
        return Err(CliError::EmptyData);
    }
    let half = |v: &[f64]| if v.len() > 1 { 0.5 * (v[1] - v[0]).abs() } else { 0.5 };
    let (hx, hy) = (half(&map.x), half(&map.y));
    let f = Frame { x0: map.x[0] - hx, x1: map.x[map.x.len() - 1] + hx, y0: map.y[0] - hy, y1: map.y[map.y.len() - 1] + hy };
    let (lo, hi) = finite_range(map.values.iter().flatten().copied()).ok_or(CliError::EmptyData)?;
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut out = String::new();
    header(&mut out, &map.title);
    let _ = writeln!(out, r#"<g class="cells" shape-rendering="crispEdges">"#);
    for (i, &y) in map.y.iter().enumerate() {
        let top = f.py(y + hy);
        let height = f.py(y - hy) - top;
        for (k, &x) in map.x.iter().enumerate() {
            let left = f.px(x - hx);
            let width = f.px(x + hx) - left;
            let _ = writeln!(
                out,
                r#"<rect x="{left:.2}" y="{top:.2}" width="{width:.3}" height="{height:.3}" fill="{}"/>"#,
                colour((map.values[i][k] - lo) / span)
            );
        }
    }
    out.push_str("</g>\n");
    axes(&mut out, &f, &map.x_label, &map.y_label);
    out.push_str("</svg>\n");
    Ok(out)
}
