use std::io::{self, Write};
use std::time::Duration;

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use subtree_core::census::{to_decimal, to_fraction};
use subtree_core::Rational;

pub const SCHEMA: u32 = 1;
const DECIMAL_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One command's results: a table plus free-form summary lines.
#[derive(Debug)]
pub struct Report {
    command: &'static str,
    params: Vec<(&'static str, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    pub summary: Vec<String>,
    pub warnings: Vec<String>,
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            params: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            summary: Vec::new(),
            warnings: Vec::new(),
            elapsed: None,
        }
    }

    pub fn param(&mut self, name: &'static str, value: impl ToString) -> &mut Self {
        self.params.push((name, value.to_string()));
        self
    }

    pub fn columns(&mut self, names: &[&str]) -> &mut Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Row) {
        debug_assert_eq!(cells.0.len(), self.columns.len());
        self.rows.push(cells.0);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "# schema={SCHEMA}")?;
        writeln!(out, "# command={}", self.command)?;
        for (k, v) in &self.params {
            writeln!(out, "# param {k}={v}")?;
        }
        for s in &self.summary {
            writeln!(out, "# {s}")?;
        }
        for w in &self.warnings {
            writeln!(out, "# warning: {w}")?;
        }
        if let Some(t) = self.elapsed {
            writeln!(out, "# elapsed_ms={}", t.as_millis())?;
        }
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    fn write_json(&self, out: &mut impl Write) -> io::Result<()> {
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().cloned().map(Value::String))
                        .collect(),
                )
            })
            .collect();
        let mut doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "parameters": params,
            "columns": self.columns,
            "rows": rows,
            "summary": self.summary,
            "warnings": self.warnings,
        });
        if let Some(t) = self.elapsed {
            doc["elapsed_ms"] = json!(t.as_millis() as u64);
        }
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}

/// Builder for one table row.
#[derive(Debug, Default)]
pub struct Row(Vec<String>);

impl Row {
    pub fn new() -> Self {
        Row::default()
    }

    pub fn cell(mut self, value: impl ToString) -> Self {
        self.0.push(value.to_string());
        self
    }

    /// Two cells: exact `p/q` and its decimal approximation.
    pub fn exact(mut self, value: &Rational) -> Self {
        self.0.push(to_fraction(value));
        self.0.push(to_decimal(value, DECIMAL_DIGITS));
        self
    }
}
