//! SVG rendering of curves and pseudozero fields.
//!
//! Curves share one panel with a `log10` vertical axis (decade ticks labelled
//! `1e<k>`). Each pseudozero field gets its own panel: contour polylines per
//! level and the interior mask drawn as black row runs.

use std::fmt::Write as _;

use crate::conditioning::ConditionCurve;
use crate::error::{Error, Result};
use crate::pseudozeros::PseudozeroField;
use crate::scenarios::ScenarioReport;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 160.0;
const MARGIN_Y: f64 = 40.0;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    /// Panel width in pixels.
    pub width: u32,
    /// Panel height in pixels.
    pub height: u32,
    /// Plot `log10` values directly; otherwise plot `10^value`.
    pub log_scale: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 800,
            height: 500,
            log_scale: true,
        }
    }
}

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.x0 + (x - self.xmin) / (self.xmax - self.xmin) * self.w
    }

    fn py(&self, y: f64) -> f64 {
        self.y0 + self.h - (y - self.ymin) / (self.ymax - self.ymin) * self.h
    }
}

fn widen(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn ticks(lo: f64, hi: f64, integral: bool) -> Vec<f64> {
    if integral {
        let (a, b) = (lo.ceil() as i64, hi.floor() as i64);
        let step = ((b - a) / 10 + 1).max(1);
        (a..=b).filter(|k| k.rem_euclid(step) == 0).map(|k| k as f64).collect()
    } else {
        (0..=4).map(|i| lo + (hi - lo) * i as f64 / 4.0).collect()
    }
}

fn axes(out: &mut String, f: &Frame, log_y: bool, xlabel: &str) {
    let _ = writeln!(
        out,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        f.x0, f.y0, f.w, f.h
    );
    for x in ticks(f.xmin, f.xmax, false) {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
            f.px(x),
            f.y0 + f.h + 16.0,
            fmt_tick(x)
        );
    }
    for y in ticks(f.ymin, f.ymax, log_y) {
        let label = if log_y { format!("1e{}", y as i64) } else { fmt_tick(y) };
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{label}</text>"##,
            f.x0,
            f.x0 + f.w,
            f.x0 - 6.0,
            f.py(y) + 4.0,
            y = f.py(y),
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
        f.x0 + f.w / 2.0,
        f.y0 + f.h + 32.0,
        escape(xlabel)
    );
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn legend(out: &mut String, f: &Frame, entries: &[(String, &str)]) {
    for (i, (label, color)) in entries.iter().enumerate() {
        let y = f.y0 + 14.0 + 16.0 * i as f64;
        let x = f.x0 + f.w + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#,
            x + 18.0,
            x + 24.0,
            y + 4.0,
            escape(label)
        );
    }
}

fn polyline(out: &mut String, pts: &[(f64, f64)], color: &str) {
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
        coords.join(" ")
    );
}

fn curve_panel(out: &mut String, curves: &[ConditionCurve], spec: &RenderSpec, top: f64) {
    let value = |v: f64| if spec.log_scale { v } else { 10f64.powf(v) };
    let finite = curves
        .iter()
        .flat_map(|c| c.values_log10.iter().copied())
        .filter(|v| v.is_finite())
        .map(value);
    let (ymin, ymax) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (ymin, ymax) = if ymin.is_finite() { widen(ymin, ymax) } else { (0.0, 1.0) };
    let xs = curves.iter().flat_map(|c| c.abscissae.iter().map(|x| x.to_f64()));
    let (xmin, xmax) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    let (xmin, xmax) = if xmin.is_finite() { widen(xmin, xmax) } else { (0.0, 1.0) };
    let (ymin, ymax) = if spec.log_scale { (ymin.floor(), ymax.ceil()) } else { (ymin, ymax) };
    let f = Frame {
        x0: MARGIN_LEFT,
        y0: top + MARGIN_Y,
        w: spec.width as f64 - MARGIN_LEFT - MARGIN_RIGHT,
        h: spec.height as f64 - 2.0 * MARGIN_Y,
        xmin,
        xmax,
        ymin,
        ymax: if ymax > ymin { ymax } else { ymin + 1.0 },
    };
    axes(out, &f, spec.log_scale, "x");
    let mut entries = Vec::new();
    for (k, c) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        // split at exact zeros, which have no place on a log axis
        let mut run = Vec::new();
        for (x, v) in c.abscissae.iter().zip(&c.values_log10) {
            if v.is_finite() {
                run.push((f.px(x.to_f64()), f.py(value(*v))));
            } else {
                polyline(out, &run, color);
                run.clear();
            }
        }
        if run.len() == 1 {
            let (x, y) = run[0];
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2" fill="{color}"/>"#);
        }
        polyline(out, &run, color);
        entries.push((c.label.clone(), color));
    }
    legend(out, &f, &entries);
}

fn field_panel(out: &mut String, field: &PseudozeroField, spec: &RenderSpec, top: f64) {
    let r = field.region;
    let f = Frame {
        x0: MARGIN_LEFT,
        y0: top + MARGIN_Y,
        w: spec.width as f64 - MARGIN_LEFT - MARGIN_RIGHT,
        h: spec.height as f64 - 2.0 * MARGIN_Y,
        xmin: r.re_min,
        xmax: r.re_max,
        ymin: r.im_min,
        ymax: r.im_max,
    };
    axes(out, &f, false, &format!("{} (Re z)", field.label));
    // interior mask: one rectangle per run of masked points in a row
    let dx = (r.re_max - r.re_min) / (field.nx - 1) as f64;
    let dy = (r.im_max - r.im_min) / (field.ny - 1) as f64;
    let mut cells = String::new();
    for j in 0..field.ny {
        let mut i = 0;
        while i < field.nx {
            if !field.interior_mask[j * field.nx + i] {
                i += 1;
                continue;
            }
            let start = i;
            while i < field.nx && field.interior_mask[j * field.nx + i] {
                i += 1;
            }
            let x0 = f.px((field.re(start) - dx / 2.0).max(r.re_min));
            let x1 = f.px((field.re(i - 1) + dx / 2.0).min(r.re_max));
            let y0 = f.py((field.im(j) + dy / 2.0).min(r.im_max));
            let y1 = f.py((field.im(j) - dy / 2.0).max(r.im_min));
            let _ = write!(
                cells,
                r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}"/>"#,
                (x1 - x0).max(0.5),
                (y1 - y0).max(0.5)
            );
        }
    }
    if !cells.is_empty() {
        let _ = writeln!(out, r#"<g class="interior" fill="black">{cells}</g>"#);
    }
    let mut entries = Vec::new();
    for (k, c) in field.contours.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(out, r#"<g class="contour" data-level="{:e}">"#, c.level);
        for line in &c.polylines {
            let pts: Vec<(f64, f64)> = line.iter().map(|(x, y)| (f.px(*x), f.py(*y))).collect();
            polyline(out, &pts, color);
        }
        out.push_str("</g>\n");
        entries.push((format!("{:e}", c.level), color));
    }
    if !cells.is_empty() {
        entries.push(("interior".to_string(), "black"));
    }
    legend(out, &f, &entries);
}

pub fn emit_svg(report: &ScenarioReport, spec: &RenderSpec) -> Result<String> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::Argument("SVG canvas has zero size".into()));
    }
    let min_w = MARGIN_LEFT + MARGIN_RIGHT + 10.0;
    let min_h = 2.0 * MARGIN_Y + 10.0;
    if (spec.width as f64) < min_w || (spec.height as f64) < min_h {
        return Err(Error::Argument(format!(
            "SVG canvas {}x{} is smaller than {min_w}x{min_h}",
            spec.width, spec.height
        )));
    }
    let panels = usize::from(!report.curves.is_empty()) + report.fields.len();
    let total_h = spec.height as usize * panels.max(1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{total_h}" viewBox="0 0 {w} {total_h}" font-family="sans-serif">
<title>{}</title>
<rect width="100%" height="100%" fill="white"/>"#,
        escape(&report.name),
        w = spec.width,
    );
    let mut top = 0.0;
    if !report.curves.is_empty() {
        curve_panel(&mut out, &report.curves, spec, top);
        top += spec.height as f64;
    }
    for field in &report.fields {
        field_panel(&mut out, field, spec, top);
        top += spec.height as f64;
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn zero_canvas() {
        let r = ScenarioReport::new("x");
        let spec = RenderSpec {
            width: 0,
            ..Default::default()
        };
        assert!(emit_svg(&r, &spec).is_err());
    }

    #[test]
    fn flat_curve_is_one_horizontal_polyline() {
        let mut r = ScenarioReport::new("flat");
        let xs = (0..5).map(Scalar::from_int).collect();
        r.curves.push(ConditionCurve::new("c", xs, vec![2.0; 5]).unwrap());
        let svg = emit_svg(&r, &RenderSpec::default()).unwrap();
        let lines: Vec<&str> = svg.lines().filter(|l| l.starts_with("<polyline")).collect();
        assert_eq!(lines.len(), 1);
        let pts = lines[0].split("points=\"").nth(1).unwrap().trim_end_matches("\"/>");
        let ys: Vec<&str> = pts.split(' ').map(|p| p.split(',').nth(1).unwrap()).collect();
        assert!(ys.windows(2).all(|w| w[0] == w[1]));
        assert!(svg.contains("1e2"));
    }

    #[test]
    fn zero_values_break_the_line() {
        let mut r = ScenarioReport::new("gap");
        let xs = (0..5).map(Scalar::from_int).collect();
        let v = vec![0.0, 1.0, f64::NEG_INFINITY, 1.0, 0.0];
        r.curves.push(ConditionCurve::new("c", xs, v).unwrap());
        let svg = emit_svg(&r, &RenderSpec::default()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
