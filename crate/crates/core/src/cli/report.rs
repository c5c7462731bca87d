//! Check reports and their JSON/text rendering.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// One line of output: a named check, its largest residual and the verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub max_residual: f64,
    pub pass: bool,
    pub details: String,
    pub value: Option<Vec<f64>>,
    pub coefficients: Option<Vec<Vec<f64>>>,
}

impl CheckReport {
    /// Passes when `max_residual ≤ tol`.
    pub fn within(check: impl Into<String>, max_residual: f64, tol: f64, details: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            max_residual,
            pass: max_residual <= tol,
            details: details.into(),
            value: None,
            coefficients: None,
        }
    }

    /// Passes only for an exactly zero residual.
    pub fn exact(check: impl Into<String>, max_residual: f64, is_zero: bool, details: impl Into<String>) -> Self {
        Self { pass: is_zero, ..Self::within(check, max_residual, f64::INFINITY, details) }
    }

    pub fn with_value(mut self, value: &[f64]) -> Self {
        self.value = Some(value.to_vec());
        self
    }

    pub fn with_coefficients(mut self, table: Vec<Vec<f64>>) -> Self {
        self.coefficients = Some(table);
        self
    }
}

/// A float written with 17 significant digits.
struct Sci(f64);

impl Serialize for Sci {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    check: &'a str,
    max_residual: Sci,
    pass: bool,
    details: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<Vec<Sci>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<Vec<Sci>>>,
}

fn sci_vec(v: &[f64]) -> Vec<Sci> {
    v.iter().copied().map(Sci).collect()
}

pub fn to_json(reports: &[CheckReport]) -> String {
    let rows: Vec<JsonReport> = reports
        .iter()
        .map(|r| JsonReport {
            check: &r.check,
            max_residual: Sci(r.max_residual),
            pass: r.pass,
            details: &r.details,
            value: r.value.as_deref().map(sci_vec),
            coefficients: r.coefficients.as_ref().map(|t| t.iter().map(|row| sci_vec(row)).collect()),
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("reports serialize")
}

pub fn to_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict}  {:<40} max_residual={:.6e}", r.check, r.max_residual));
        if !r.details.is_empty() {
            out.push_str(&format!("  {}", r.details));
        }
        out.push('\n');
        if let Some(v) = &r.value {
            let parts: Vec<String> = v.iter().map(|c| format!("{c:.16e}")).collect();
            out.push_str(&format!("      value = ({})\n", parts.join(", ")));
        }
        if let Some(t) = &r.coefficients {
            for (m, row) in t.iter().enumerate() {
                let parts: Vec<String> = row.iter().map(|c| format!("{c:.16e}")).collect();
                out.push_str(&format!("      ε^{m}: ({})\n", parts.join(", ")));
            }
        }
    }
    out
}
