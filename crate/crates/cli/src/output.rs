use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Twelve significant digits in scientific notation.
fn number(n: &serde_json::Number) -> String {
    if n.is_f64() {
        format!("{:.11e}", n.as_f64().unwrap_or(f64::NAN))
    } else {
        n.to_string()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => number(n),
        Value::String(s) => csv_field(s),
        other => {
            let mut s = String::new();
            json_value(other, &mut s);
            csv_field(&s)
        }
    }
}

fn json_value(v: &Value, out: &mut String) {
    match v {
        Value::Number(n) => out.push_str(&number(n)),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                json_value(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                json_value(item, out);
            }
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Renders rows with the given columns as CSV (header first) or a JSON array
/// with one object per line.
pub fn render<T: Serialize>(rows: &[T], columns: &[&str], format: Format) -> Result<String> {
    let values: Vec<serde_json::Map<String, Value>> = rows
        .iter()
        .map(|r| match serde_json::to_value(r)? {
            Value::Object(m) => Ok(m),
            other => anyhow::bail!("row is not a record: {other}"),
        })
        .collect::<Result<_>>()?;
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(
                &columns
                    .iter()
                    .map(|c| csv_field(c))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
            for m in &values {
                let cells: Vec<String> = columns
                    .iter()
                    .map(|c| csv_cell(m.get(*c).unwrap_or(&Value::Null)))
                    .collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            out.push('[');
            for (i, m) in values.iter().enumerate() {
                out.push_str(if i == 0 { "\n  " } else { ",\n  " });
                let ordered: serde_json::Map<String, Value> = columns
                    .iter()
                    .map(|c| (c.to_string(), m.get(*c).cloned().unwrap_or(Value::Null)))
                    .collect();
                json_value(&Value::Object(ordered), &mut out);
            }
            if !values.is_empty() {
                out.push('\n');
            }
            out.push_str("]\n");
        }
    }
    Ok(out)
}

/// Writes to `path`, or standard output when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .context("writing standard output")?;
            stdout.flush().context("writing standard output")
        }
    }
}

/// One-line JSON error record.
pub fn error_record(code: &str, message: &str) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "{{\"code\":{},\"message\":{}}}",
        Value::String(code.into()),
        Value::String(message.replace('\n', " "))
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        a: u64,
        b: f64,
        c: String,
    }

    #[test]
    fn csv_header_only() {
        let rows: Vec<Row> = Vec::new();
        assert_eq!(
            render(&rows, &["a", "b", "c"], Format::Csv).unwrap(),
            "a,b,c\n"
        );
    }

    #[test]
    fn csv_quotes_and_digits() {
        let rows = vec![Row {
            a: 7,
            b: 0.125,
            c: "x,\"y\"".into(),
        }];
        assert_eq!(
            render(&rows, &["a", "b", "c"], Format::Csv).unwrap(),
            "a,b,c\n7,1.25000000000e-1,\"x,\"\"y\"\"\"\n"
        );
    }

    #[test]
    fn json_rows() {
        let rows = vec![Row {
            a: 1,
            b: 2.0,
            c: "z".into(),
        }];
        assert_eq!(
            render(&rows, &["a", "b", "c"], Format::Json).unwrap(),
            "[\n  {\"a\":1,\"b\":2.00000000000e0,\"c\":\"z\"}\n]\n"
        );
    }
}
