//! CSV emitter and reader.
//!
//! Curve rows are `series,x,log10_value` in report order, `x` ascending
//! within a series. Contours follow in a second block headed
//! `series,level,vertex_index,re,im`, with one series per polyline
//! (`<field>/<level>/<index>`). Numbers carry 17 significant digits; an
//! exactly zero condition value is written as `-inf`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scenarios::ScenarioReport;

pub const CURVE_HEADER: &str = "series,x,log10_value";
pub const CONTOUR_HEADER: &str = "series,level,vertex_index,re,im";

pub fn format_number(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub fn parse_number(s: &str) -> Result<f64> {
    match s {
        "-inf" => Ok(f64::NEG_INFINITY),
        "inf" => Ok(f64::INFINITY),
        _ => s
            .parse()
            .map_err(|_| Error::Argument(format!("bad number {s:?} in CSV"))),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit_csv(report: &ScenarioReport) -> String {
    let mut out = String::new();
    out.push_str(CURVE_HEADER);
    out.push('\n');
    for curve in &report.curves {
        let series = quote(&curve.label);
        let mut rows: Vec<(f64, f64)> = curve
            .abscissae
            .iter()
            .map(|x| x.to_f64())
            .zip(curve.values_log10.iter().copied())
            .collect();
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (x, v) in rows {
            let _ = writeln!(out, "{series},{},{}", format_number(x), format_number(v));
        }
    }
    if report.fields.iter().any(|f| !f.contours.is_empty()) {
        out.push('\n');
        out.push_str(CONTOUR_HEADER);
        out.push('\n');
        for field in &report.fields {
            for c in &field.contours {
                for (k, line) in c.polylines.iter().enumerate() {
                    let series = quote(&format!("{}/{:e}/{k}", field.label, c.level));
                    for (i, (re, im)) in line.iter().enumerate() {
                        let _ = writeln!(
                            out,
                            "{series},{},{i},{},{}",
                            format_number(c.level),
                            format_number(*re),
                            format_number(*im)
                        );
                    }
                }
            }
        }
    }
    out
}

/// Curve rows of an emitted CSV as `(series, x, log10_value)`.
pub fn parse_curve_rows(text: &str) -> Result<Vec<(String, f64, f64)>> {
    let mut lines = text.lines();
    if lines.next() != Some(CURVE_HEADER) {
        return Err(Error::Argument("missing CSV header".into()));
    }
    let mut rows = Vec::new();
    for line in lines {
        if line.is_empty() {
            break;
        }
        let (rest, v) = line
            .rsplit_once(',')
            .ok_or_else(|| Error::Argument(format!("bad CSV row {line:?}")))?;
        let (series, x) = rest
            .rsplit_once(',')
            .ok_or_else(|| Error::Argument(format!("bad CSV row {line:?}")))?;
        let series = series
            .strip_prefix('"')
            .and_then(|s| s.strip_suffix('"'))
            .map(|s| s.replace("\"\"", "\""))
            .unwrap_or_else(|| series.to_string());
        rows.push((series, parse_number(x)?, parse_number(v)?));
    }
    Ok(rows)
}
