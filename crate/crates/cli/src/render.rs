//! Output formats. Every command reduces its result to either a
//! serializable document (JSON) or a [`Table`] (table and CSV; JSON too
//! when there is no richer document).

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::str::FromStr;

use anyhow::{anyhow, Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        <Format as ValueEnum>::from_str(s, true)
            .map_err(|_| anyhow!("unknown format `{s}` (expected table, json or csv)"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }

    fn exact(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            Cell::Num(x) => short(*x),
            Cell::Empty => "-".into(),
            other => other.exact(),
        }
    }
}

fn short(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-3..1e6).contains(&a) {
        let s = format!("{x:.6}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{x:.4e}")
    }
}

/// Columns with units; `""` marks a non-numeric column.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[(&str, &str)]) -> Self {
        Self { columns: columns.iter().map(|(n, u)| (n.to_string(), u.to_string())).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn headers(&self) -> Vec<String> {
        self.columns.iter().map(|(n, u)| if u.is_empty() { n.clone() } else { format!("{n} [{u}]") }).collect()
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::pretty).collect()).collect();
        let headers = self.headers();
        let widths: Vec<usize> = (0..headers.len())
            .map(|i| cells.iter().map(|r| r[i].chars().count()).chain([headers[i].chars().count()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, row: &[String]| {
            let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &headers);
        for r in &cells {
            line(&mut out, r);
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.headers())?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::exact))?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?)
    }

    pub fn to_json(&self) -> Value {
        let units: Map<String, Value> =
            self.columns.iter().filter(|(_, u)| !u.is_empty()).map(|(n, u)| (n.clone(), json!(u))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().zip(r).map(|((n, _), c)| (n.clone(), c.json())).collect()))
            .collect();
        json!({ "units": units, "rows": rows })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Table => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
            Format::Json => json_text(&self.to_json()),
        }
    }
}

pub fn json_text<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

/// Flatten a nested document into (quantity, value, unit) rows. Objects of
/// the form `{value, unit}` become one row.
pub fn flatten(doc: &Value) -> Table {
    let mut t = Table::new(&[("quantity", ""), ("value", ""), ("unit", "")]);
    walk(doc, String::new(), &mut t);
    t
}

fn walk(v: &Value, path: String, t: &mut Table) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) if m.len() == 2 && m.contains_key("value") && m.contains_key("unit") => {
            let unit = m["unit"].as_str().unwrap_or_default().to_string();
            t.push(vec![Cell::Text(path), scalar(&m["value"]), Cell::Text(unit)]);
        }
        Value::Object(m) => {
            for (k, x) in m {
                walk(x, join(k), t);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                walk(x, join(&i.to_string()), t);
            }
        }
        other => {
            let unit = if other.is_number() { "1" } else { "" };
            t.push(vec![Cell::Text(path), scalar(other), Cell::Text(unit.into())]);
        }
    }
}

fn scalar(v: &Value) -> Cell {
    match v {
        Value::Number(n) => n.as_f64().map(Cell::Num).unwrap_or(Cell::Empty),
        Value::Bool(b) => Cell::Bool(*b),
        Value::String(s) => Cell::Text(s.clone()),
        _ => Cell::Empty,
    }
}

/// Write to `path`, or stdout when `None`.
pub fn emit(text: &str, path: Option<&str>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {p}")),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_single_header_line() {
        let mut t = Table::new(&[("t", "s"), ("b", "")]);
        t.push(vec![Cell::Num(0.5), Cell::Num(1.0)]);
        assert_eq!(t.to_csv().unwrap(), "t [s],b\n0.5,1.0\n");
    }

    #[test]
    fn flatten_keeps_units() {
        let doc = json!({"timing": {"t_f": {"value": 0.8, "unit": "s"}}, "ok": true, "n": 3.0});
        let t = flatten(&doc);
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.rows[0], vec![Cell::Text("timing.t_f".into()), Cell::Num(0.8), Cell::Text("s".into())]);
        assert_eq!(t.rows[2][2], Cell::Text("1".into()));
    }

    #[test]
    fn short_numbers() {
        assert_eq!(short(0.14), "0.14");
        assert_eq!(short(434.875352), "434.875352");
        assert_eq!(short(4.48e-4), "4.4800e-4");
        assert_eq!(short(0.0), "0");
    }
}
