//! Rendering of command results as JSON, CSV or text.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Fixed-column projection of a result.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Output {
    /// Source of truth; CSV and text are projections of it.
    pub value: Value,
    pub table: Option<Table>,
    pub text: String,
    /// Whether every check of the command passed.
    pub ok: bool,
}

impl Output {
    /// A result with no checks attached.
    pub fn ok(value: Value, text: String) -> Self {
        Output {
            value,
            table: None,
            text,
            ok: true,
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(out: &Output, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&out.value)? + "\n"),
        Format::Text if out.text.ends_with('\n') => Ok(out.text.clone()),
        Format::Text => Ok(format!("{}\n", out.text)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            match &out.table {
                Some(t) => {
                    w.write_record(&t.header)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                }
                None => {
                    w.write_record(["key", "value"])?;
                    if let Value::Object(m) = &out.value {
                        for (k, v) in m {
                            w.write_record([k.as_str(), &scalar(v)])?;
                        }
                    }
                }
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}
