//! Ordered report rows, written as JSON Lines or projected to CSV.

use crate::config::{CliError, CliResult, Format};
use lp_santalo::QuadratureSpec;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Str(String),
    Int(u64),
    Bool(bool),
    /// Non-finite values become `null` in JSON and `inf`/`-inf`/`nan` in CSV.
    Float(f64),
    Floats(Vec<f64>),
    Missing,
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Self::Str(s) => s.clone(),
            Self::Int(i) => i.to_string(),
            Self::Bool(b) => b.to_string(),
            Self::Float(x) => float_text(*x),
            Self::Floats(xs) => xs.iter().map(|x| float_text(*x)).collect::<Vec<_>>().join(";"),
            Self::Missing => String::new(),
        }
    }
}

fn float_text(x: f64) -> String {
    if x.is_finite() {
        format!("{x:?}")
    } else {
        x.to_string()
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let finite = |x: f64| x.is_finite().then_some(x);
        match self {
            Self::Str(v) => s.serialize_str(v),
            Self::Int(v) => s.serialize_u64(*v),
            Self::Bool(v) => s.serialize_bool(*v),
            Self::Float(v) => finite(*v).serialize(s),
            Self::Floats(v) => v.iter().map(|x| finite(*x)).collect::<Vec<_>>().serialize(s),
            Self::Missing => s.serialize_none(),
        }
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Self::Str(v.to_string())
    }
}
impl From<String> for Field {
    fn from(v: String) -> Self {
        Self::Str(v)
    }
}
impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Self::Float(v)
    }
}
impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Self::Int(v)
    }
}
impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Self::Int(v as u64)
    }
}
impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Self::Bool(v)
    }
}
impl From<Vec<f64>> for Field {
    fn from(v: Vec<f64>) -> Self {
        Self::Floats(v)
    }
}
impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(v: Option<T>) -> Self {
        v.map_or(Self::Missing, Into::into)
    }
}

/// A report row whose columns keep insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row(Vec<(&'static str, Field)>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Field>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// First 16 hex digits of the SHA-256 of the quadrature settings' JSON form.
pub fn spec_hash(spec: &QuadratureSpec) -> String {
    let digest = Sha256::digest(spec.to_json().as_bytes());
    hex::encode(&digest[..8])
}

/// Writes rows in order. CSV takes its header from the union of columns in
/// first-seen order.
pub fn write_rows(rows: &[Row], format: Format, out: &mut dyn Write) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match format {
        Format::Json => {
            for row in rows {
                let line = serde_json::to_string(row).map_err(|e| CliError::Io(e.to_string()))?;
                writeln!(out, "{line}").map_err(io)?;
            }
        }
        Format::Csv => {
            let mut header: Vec<&'static str> = Vec::new();
            for row in rows {
                for (k, _) in &row.0 {
                    if !header.contains(k) {
                        header.push(k);
                    }
                }
            }
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&header).map_err(csv_err)?;
            for row in rows {
                let record: Vec<String> = header
                    .iter()
                    .map(|k| row.get(k).map_or_else(String::new, Field::csv))
                    .collect();
                w.write_record(&record).map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_order_and_nulls_non_finite() {
        let row = Row::new().with("b", 1.5).with("a", f64::INFINITY).with("v", vec![1.0, f64::NAN]);
        assert_eq!(serde_json::to_string(&row).unwrap(), r#"{"b":1.5,"a":null,"v":[1.0,null]}"#);
    }

    #[test]
    fn csv_projection() {
        let rows = vec![
            Row::new().with("x", 1.0).with("v", vec![0.5, -2.0]),
            Row::new().with("x", f64::INFINITY).with("note", "hi"),
        ];
        let mut buf = Vec::new();
        write_rows(&rows, Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,v,note\n1.0,0.5;-2.0,\ninf,,hi\n");
    }

    #[test]
    fn hash_depends_on_spec() {
        let a = spec_hash(&QuadratureSpec::default());
        assert_eq!(a.len(), 16);
        assert_eq!(a, spec_hash(&QuadratureSpec::default()));
        assert_ne!(a, spec_hash(&QuadratureSpec::default().with_rel_tol(1e-6)));
    }
}
