use serde::ser::{SerializeSeq, Serializer};

use crate::scalar::Scalar;
use crate::scenarios::ScenarioReport;

pub(crate) fn scalars_as_f64<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_f64())?;
    }
    seq.end()
}

/// `-inf` becomes `null`.
pub(crate) fn log_values<S: Serializer>(vs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        if v.is_finite() {
            seq.serialize_element(v)?;
        } else {
            seq.serialize_element(&Option::<f64>::None)?;
        }
    }
    seq.end()
}

#[derive(serde::Serialize)]
struct Document<'a> {
    polycond_schema: u32,
    #[serde(flatten)]
    report: &'a ScenarioReport,
}

pub const SCHEMA_VERSION: u32 = 1;

/// Pretty-printed report with a `"polycond_schema"` version field.
pub fn emit_json(report: &ScenarioReport) -> String {
    let doc = Document {
        polycond_schema: SCHEMA_VERSION,
        report,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}
