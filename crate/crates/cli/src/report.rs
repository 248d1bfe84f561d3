use std::fmt::Write as _;
use std::path::Path;

use qstat_core::rational::{self, Rational};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "qstat/1";

/// Output of one subcommand: machine form, human form and an optional
/// distribution table for export.
pub struct Report {
    pub command: &'static str,
    pub json: Map<String, Value>,
    pub text: String,
    pub table: Option<Vec<Row>>,
}

/// One line of an exported distribution.
pub struct Row {
    pub r: Rational,
    pub exact_p: Rational,
    pub beta_density: Option<f64>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), json!(SCHEMA));
        json.insert("command".into(), json!(command));
        Self { command, json, text: String::new(), table: None }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.json.insert(key.into(), value);
    }

    /// Stores `key` as a `num/den` string and `key_f64` as its float value.
    pub fn set_rational(&mut self, key: &str, value: &Rational) {
        self.json.insert(key.into(), json!(rational::format(value)));
        self.json.insert(format!("{key}_f64"), json!(rational::to_f64(value)));
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.text.push_str(text.as_ref());
        self.text.push('\n');
    }

    pub fn into_json(self) -> Value {
        Value::Object(self.json)
    }
}

/// `[{R, R_f64, p, p_f64}]` for a fraction distribution.
pub fn distribution_json(rows: &[(Rational, Rational)]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(r, p)| {
                json!({
                    "R": rational::format(r),
                    "R_f64": rational::to_f64(r),
                    "p": rational::format(p),
                    "p_f64": rational::to_f64(p),
                })
            })
            .collect(),
    )
}

pub fn distribution_text(rows: &[(Rational, Rational)]) -> String {
    let mut out = String::new();
    for (r, p) in rows {
        let _ = writeln!(
            out,
            "  R = {:>9}  P = {:>14}  ({:.6})",
            rational::format(r),
            rational::format(p),
            rational::to_f64(p)
        );
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportFormat {
    Json,
    Csv,
}

/// JSON keeps the exact rationals; CSV holds floats for plotting tools.
pub fn export_table(command: &str, rows: &[Row], path: &Path, format: ExportFormat) -> std::io::Result<()> {
    let body = match format {
        ExportFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "R": rational::format(&row.r),
                        "exact_p": rational::format(&row.exact_p),
                        "beta_density": row.beta_density,
                    })
                })
                .collect();
            let doc = json!({ "schema": SCHEMA, "command": command, "rows": rows });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        ExportFormat::Csv => {
            let mut out = String::from("R,exact_p,beta_density\n");
            for row in rows {
                let density = row.beta_density.map(|d| d.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    rational::to_f64(&row.r),
                    rational::to_f64(&row.exact_p),
                    density
                );
            }
            out
        }
    };
    std::fs::write(path, body)
}
