//! Tables and their CSV / JSON renderings. Floats are always written with
//! 17 significant digits in lowercase scientific form, so identical runs
//! give identical bytes.

use num_complex::Complex64 as C64;
use serde_json::{Map, Value};

pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn fmt_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", fmt_f64(z.re), sign, fmt_f64(z.im.abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_f64(*v),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            // strings keep the exact digits
            Cell::Float(v) => Value::String(fmt_f64(*v)),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(if v { "true" } else { "false" }.into())
    }
}

/// Rectangular result set plus free-form diagnostics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: Vec<String>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new(), diagnostics: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, config: &[(&'static str, String)]) -> String {
        let mut cfg = Map::new();
        for (k, v) in config {
            cfg.insert((*k).to_string(), Value::String(v.clone()));
        }
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (h, c) in self.header.iter().zip(r) {
                    m.insert((*h).to_string(), c.json());
                }
                Value::Object(m)
            })
            .collect();
        let mut top = Map::new();
        top.insert("config".into(), Value::Object(cfg));
        top.insert("results".into(), Value::Array(results));
        top.insert("diagnostics".into(), Value::Array(self.diagnostics.iter().cloned().map(Value::String).collect()));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(-1234.5), "-1.2345000000000000e3");
        assert_eq!(fmt_complex(C64::new(1.0, -2.0)), "1.0000000000000000e0-2.0000000000000000e0i");
    }

    #[test]
    fn csv_and_json() {
        let mut t = Table::new(&["n", "value", "label"]);
        t.push(vec![1usize.into(), 0.25.into(), "a,b".into()]);
        t.diagnostics.push("note".into());
        assert_eq!(t.to_csv(), "n,value,label\n1,2.5000000000000000e-1,\"a,b\"\n");
        let j: Value = serde_json::from_str(&t.to_json(&[("q", "0.5".into())])).unwrap();
        assert_eq!(j["results"][0]["value"], "2.5000000000000000e-1");
        assert_eq!(j["results"][0]["n"], 1);
        assert_eq!(j["diagnostics"][0], "note");
        assert_eq!(j["config"]["q"], "0.5");
    }
}
