//! Rendering of flat records as JSON lines, CSV or aligned text.

use std::io::Write;

use dioph_core::numerics::{ExtReal, PrecisionReal};
use serde_json::Value;

use crate::config::OutputFormat;
use crate::error::CliError;

/// A field value. `Missing` is printed as `null` in JSON and `n/a` elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Str(String),
    Bool(bool),
    Missing,
}

impl Cell {
    pub fn real(v: &PrecisionReal, digits: usize) -> Cell {
        Cell::Str(v.to_decimal_string(digits))
    }

    pub fn ext(v: &ExtReal, digits: usize) -> Cell {
        Cell::Str(v.to_decimal_string(digits))
    }

    pub fn opt(v: Option<&PrecisionReal>, digits: usize) -> Cell {
        v.map_or(Cell::Missing, |v| Cell::real(v, digits))
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Str(s.into())
    }

    fn json(&self) -> String {
        match self {
            Cell::Str(s) => Value::String(s.clone()).to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => "null".into(),
        }
    }

    fn plain(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => "n/a".into(),
        }
    }
}

/// Ordered `(key, value)` pairs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record(pub Vec<(String, Cell)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn push(&mut self, key: &str, value: Cell) -> &mut Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// Single-line JSON object with keys in insertion order.
    pub fn to_json(&self) -> String {
        let body: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| format!("{}:{}", Value::String(k.clone()), v.json()))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    }
}

/// CSV with the keys of the first record as header (RFC 4180, CRLF).
pub fn csv_string(records: &[Record]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    if let Some(first) = records.first() {
        w.write_record(first.0.iter().map(|(k, _)| k.as_str())).expect("in-memory write");
    }
    for r in records {
        w.write_record(r.0.iter().map(|(_, v)| v.plain())).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

/// Aligned text: `key  value` lines for one record, a table for several.
pub fn text_string(records: &[Record]) -> String {
    let mut out = String::new();
    match records {
        [] => {}
        [one] => {
            let width = one.0.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in &one.0 {
                out.push_str(&format!("{k:<width$}  {}\n", v.plain()));
            }
        }
        many => {
            let keys: Vec<&str> = many[0].0.iter().map(|(k, _)| k.as_str()).collect();
            let rows: Vec<Vec<String>> = many.iter().map(|r| r.0.iter().map(|(_, v)| v.plain()).collect()).collect();
            let widths: Vec<usize> = (0..keys.len())
                .map(|i| {
                    rows.iter()
                        .filter_map(|r| r.get(i))
                        .map(|c| c.chars().count())
                        .chain([keys[i].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: Vec<&str>| {
                let parts: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                parts.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(keys.clone()));
            for r in &rows {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

pub fn render(records: &[Record], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => records.iter().map(|r| r.to_json() + "\n").collect(),
        OutputFormat::Csv => csv_string(records),
        OutputFormat::Text => text_string(records),
    }
}

pub fn emit(out: &mut dyn Write, records: &[Record], format: OutputFormat) -> Result<(), CliError> {
    out.write_all(render(records, format).as_bytes()).map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<Record> {
        let mut a = Record::new();
        a.push("n", Cell::text("2")).push("tau", Cell::text("0.618")).push("sigma", Cell::Missing);
        let mut b = Record::new();
        b.push("n", Cell::text("10")).push("tau", Cell::text("0.1")).push("sigma", Cell::text("x,y"));
        vec![a, b]
    }

    #[test]
    fn json_lines_keep_key_order() {
        let s = render(&sample(), OutputFormat::Json);
        assert_eq!(
            s,
            "{\"n\":\"2\",\"tau\":\"0.618\",\"sigma\":null}\n{\"n\":\"10\",\"tau\":\"0.1\",\"sigma\":\"x,y\"}\n"
        );
    }

    #[test]
    fn csv_quotes_and_marks_missing() {
        let s = render(&sample(), OutputFormat::Csv);
        assert_eq!(s, "n,tau,sigma\r\n2,0.618,n/a\r\n10,0.1,\"x,y\"\r\n");
    }

    #[test]
    fn text_table_is_aligned() {
        let s = render(&sample(), OutputFormat::Text);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], " n    tau  sigma");
        assert_eq!(lines[1], " 2  0.618    n/a");
        assert_eq!(lines[2], "10    0.1    x,y");
        let one = render(&sample()[..1], OutputFormat::Text);
        assert!(one.starts_with("n      2\n"));
    }
}
