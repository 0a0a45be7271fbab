//! Result records and their table, CSV and JSON renderings.

use std::io::Write;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantityValue {
    Number(f64),
    Text(String),
}

/// One echoed input parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: QuantityValue,
    pub unit: String,
}

impl Quantity {
    pub fn number(name: &str, value: f64, unit: &str) -> Self {
        Self {
            name: name.into(),
            value: QuantityValue::Number(value),
            unit: unit.into(),
        }
    }

    pub fn text(name: &str, value: &str) -> Self {
        Self {
            name: name.into(),
            value: QuantityValue::Text(value.into()),
            unit: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub inputs: Vec<Quantity>,
    pub value: f64,
    pub unit: String,
    pub formula: String,
    /// `closed-form`, `spectral-oracle`, `golden-rule-chain`, ...
    pub provenance: String,
}

fn fmt_number(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.6e}")
    }
}

fn header(r: &OutputRecord) -> Vec<String> {
    let mut h: Vec<String> = r
        .inputs
        .iter()
        .map(|q| {
            if q.unit.is_empty() {
                q.name.clone()
            } else {
                format!("{} [{}]", q.name, q.unit)
            }
        })
        .collect();
    h.extend(["value", "unit", "formula", "provenance"].map(String::from));
    h
}

fn cells(r: &OutputRecord, number: fn(f64) -> String) -> Vec<String> {
    let mut c: Vec<String> = r
        .inputs
        .iter()
        .map(|q| match &q.value {
            QuantityValue::Number(x) => number(*x),
            QuantityValue::Text(s) => s.clone(),
        })
        .collect();
    c.push(number(r.value));
    c.push(r.unit.clone());
    c.push(r.formula.clone());
    c.push(r.provenance.clone());
    c
}

pub fn write_records(
    out: &mut dyn Write,
    records: &[OutputRecord],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(header(first))?;
            }
            for r in records {
                // Round-trip exact: shortest representation that parses back.
                w.write_record(cells(r, |x| format!("{x:e}")))?;
            }
            w.flush()
        }
        Format::Table => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let mut rows = vec![header(first)];
            rows.extend(records.iter().map(|r| cells(r, fmt_number)));
            write_table(out, &rows)
        }
    }
}

pub fn write_table(out: &mut dyn Write, rows: &[Vec<String>]) -> std::io::Result<()> {
    let ncol = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncol)
        .map(|i| {
            rows.iter()
                .filter_map(|r| r.get(i))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(())
}
