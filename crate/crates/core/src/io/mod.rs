//! Emitters for scenario reports: CSV, SVG and JSON.

pub mod csv;
pub mod json;
pub mod svg;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scenarios::ScenarioReport;

pub use self::csv::emit_csv;
pub use self::json::emit_json;
pub use self::svg::{emit_svg, RenderSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Svg,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            _ => Err(Error::Argument(format!("unknown format {s:?}; expected csv, svg or json"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Svg => "svg",
            Format::Json => "json",
        })
    }
}

pub fn render(report: &ScenarioReport, format: Format, spec: &RenderSpec) -> Result<String> {
    match format {
        Format::Csv => Ok(emit_csv(report)),
        Format::Svg => emit_svg(report, spec),
        Format::Json => Ok(emit_json(report)),
    }
}

/// Renders `report` and writes it to `path`.
pub fn write_report(report: &ScenarioReport, format: Format, spec: &RenderSpec, path: &Path) -> Result<()> {
    let text = render(report, format, spec)?;
    std::fs::write(path, text)?;
    Ok(())
}
