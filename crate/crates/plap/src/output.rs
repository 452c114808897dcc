//! Number formatting and file/stdout writers.
//!
//! Numbers use the shortest round-trip decimal form; non-finite values are
//! written as `inf`, `-inf`, `nan`. CSV uses `,`, `.` and `\n`, with a
//! header row.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::CliError;

pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        serde_json::to_string(&x).expect("finite floats serialize")
    }
}

pub fn parse_num(s: &str) -> Option<f64> {
    match s.trim() {
        "nan" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        other => other.parse().ok(),
    }
}

/// JSON number, or the string form for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(fmt_num(x)))
}

fn write_bytes(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, bytes)?;
        }
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

pub fn json_text(value: &Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn csv_text(header: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
}

/// One header row and one value row from a flat object.
pub fn object_csv(obj: &Map<String, Value>) -> Result<String, CliError> {
    let header: Vec<String> = obj.keys().cloned().collect();
    let row: Vec<String> = obj
        .values()
        .map(|v| match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.as_f64().map(fmt_num).unwrap_or_else(|| n.to_string()),
            other => other.to_string(),
        })
        .collect();
    csv_text(&header, &[row])
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    write_bytes(text.as_bytes(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for &x in &[0.0, 1.0, -2.5, 1e-300, 0.1 + 0.2, f64::MAX, f64::INFINITY, f64::NEG_INFINITY] {
            assert_eq!(parse_num(&fmt_num(x)), Some(x));
        }
        assert!(parse_num(&fmt_num(f64::NAN)).unwrap().is_nan());
        assert_eq!(fmt_num(0.5), "0.5");
    }

    #[test]
    fn csv_uses_newlines() {
        let text = csv_text(&["a".into(), "b".into()], &[vec!["1".into(), "0.5".into()]]).unwrap();
        assert_eq!(text, "a,b\n1,0.5\n");
    }
}
