//! JSON and TSV result files. Floats are rounded to a fixed number of
//! significant digits so reports diff cleanly across platforms.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::write_atomic;
use crate::error::{Error, Result};
use crate::metrics::{DegreeHistogram, SingularSpectrum};

pub const SIGNIFICANT_DIGITS: usize = 6;

pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_significant).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with object keys sorted and floats rounded.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value).map_err(|e| Error::validation(format!("serializing report: {e}")))?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::validation(format!("serializing report: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    write_atomic(path, to_json_string(value)?.as_bytes())
}

/// `degree<TAB>count`, one row per degree that occurs.
pub fn degree_tsv(h: &DegreeHistogram) -> String {
    let mut out = String::from("degree\tcount\n");
    for (d, c) in h.iter() {
        writeln!(out, "{d}\t{c}").unwrap();
    }
    out
}

/// `rank<TAB>value`, ranks starting at 1.
pub fn spectrum_tsv(s: &SingularSpectrum) -> String {
    let mut out = String::from("rank\tvalue\n");
    for (i, v) in s.values.iter().enumerate() {
        writeln!(out, "{}\t{}", i + 1, round_significant(*v)).unwrap();
    }
    out
}

pub fn write_tsv(contents: &str, path: &Path) -> Result<()> {
    write_atomic(path, contents.as_bytes())
}
