//! Table emitter shared by the CLI subcommands.
//!
//! A [`Record`] renders as TSV (header row, tab separated), a Markdown
//! table, or a JSON document of the form
//!
//! ```text
//! { "format_version": "1", "command": ..., "params": {...}, "rows": [{...}], "warnings": [...] }
//! ```
//!
//! `warnings` is omitted when empty. Rationals and perturbed values are
//! strings (`"1/3"`, `"6+δ"`), currents are `{"b": B, "h": H, "e": E}` with
//! `null` for zero powers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::arith::{format_rational, PerturbedValue, Rational};
use crate::error::{EchError, Result};
use crate::orbit::ReebCurrent;

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = EchError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            other => Err(EchError::RejectedInput(format!("unknown output format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Tsv => "tsv",
            Format::Json => "json",
            Format::Markdown => "md",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Field {
    Int(BigInt),
    Text(String),
    Fraction(Rational),
    Perturbed(PerturbedValue),
    Current(ReebCurrent),
    Bool(bool),
    Null,
}

impl Field {
    pub fn int(n: impl Into<BigInt>) -> Self {
        Field::Int(n.into())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Field::Text(s.into())
    }

    fn to_json(&self) -> Value {
        match self {
            Field::Int(n) => match n.to_i64() {
                Some(v) => Value::from(v),
                None => Value::String(n.to_string()),
            },
            Field::Text(s) => Value::String(s.clone()),
            Field::Fraction(r) => Value::String(format_rational(r)),
            Field::Perturbed(p) => Value::String(p.to_string()),
            Field::Current(c) => {
                let power = |k: u64| if k == 0 { Value::Null } else { Value::from(k) };
                let mut m = Map::new();
                m.insert("b".into(), power(c.b));
                m.insert("h".into(), power(c.h));
                m.insert("e".into(), power(c.e));
                Value::Object(m)
            }
            Field::Bool(b) => Value::Bool(*b),
            Field::Null => Value::Null,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Int(n) => write!(f, "{n}"),
            Field::Text(s) => f.write_str(s),
            Field::Fraction(r) => f.write_str(&format_rational(r)),
            Field::Perturbed(p) => write!(f, "{p}"),
            Field::Current(c) => write!(f, "{c}"),
            Field::Bool(b) => write!(f, "{b}"),
            Field::Null => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub command: String,
    pub params: Vec<(String, Field)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
    pub warnings: Vec<String>,
}

impl Record {
    pub fn new(command: impl Into<String>, columns: &[&str]) -> Self {
        Record {
            command: command.into(),
            params: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn param(mut self, name: &str, value: Field) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    pub fn push_row(&mut self, row: Vec<Field>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn to_json_value(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("format_version".into(), Value::from(FORMAT_VERSION));
        doc.insert("command".into(), Value::from(self.command.clone()));
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        doc.insert("params".into(), Value::Object(params));
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        doc.insert("rows".into(), Value::Array(rows));
        if !self.warnings.is_empty() {
            let w = self.warnings.iter().cloned().map(Value::from).collect();
            doc.insert("warnings".into(), Value::Array(w));
        }
        Value::Object(doc)
    }

    /// Warnings go in a JSON field; TSV and Markdown leave them to the caller
    /// (the CLI prints them to stderr).
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.render_tsv(),
            Format::Markdown => self.render_markdown(),
            Format::Json => render_json(&self.to_json_value()),
        }
    }

    fn render_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|f| f.to_string().replace(['\t', '\n'], " ")).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    fn render_markdown(&self) -> String {
        let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
        let mut out = line(self.columns.clone());
        out.push_str(&line(self.columns.iter().map(|_| "---".to_string()).collect()));
        for row in &self.rows {
            out.push_str(&line(row.iter().map(|f| f.to_string().replace('|', "\\|")).collect()));
        }
        out
    }
}

/// Pretty JSON with a trailing newline. Parsing the output and rendering
/// it again gives the same bytes.
pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn reemit_json(text: &str) -> Result<String> {
    let v: Value = serde_json::from_str(text).map_err(|e| EchError::RejectedInput(format!("invalid json: {e}")))?;
    Ok(render_json(&v))
}
