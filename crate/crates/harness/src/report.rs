//! Tabular reports with per-row tolerance verdicts, rendered as CSV,
//! Markdown or NDJSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Markdown,
    Ndjson,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Markdown => "md",
            OutputFormat::Ndjson => "ndjson",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Text(String),
    Num(f64),
    Int(usize),
    Missing,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Num(v) => format!("{v}"),
            Value::Int(v) => v.to_string(),
            Value::Missing => String::new(),
        }
    }

    fn markdown(&self) -> String {
        match self {
            Value::Text(s) => s.clone(),
            Value::Num(v) => format!("{v:.4}"),
            Value::Int(v) => v.to_string(),
            Value::Missing => "-".into(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Text(s) => serde_json::Value::String(s.clone()),
            Value::Num(v) => serde_json::json!(v),
            Value::Int(v) => serde_json::json!(v),
            Value::Missing => serde_json::Value::Null,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// `|actual - expected| <= tolerance`.
    Near { expected: f64, tolerance: f64 },
    /// `actual < bound`.
    Below { bound: f64 },
}

/// One expected-value comparison. Non-binding checks are reported but never
/// fail the run.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub column: String,
    pub actual: f64,
    pub criterion: Criterion,
    pub binding: bool,
}

impl Check {
    pub fn new(column: impl Into<String>, actual: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            column: column.into(),
            actual,
            criterion: Criterion::Near {
                expected,
                tolerance,
            },
            binding: true,
        }
    }

    pub fn below(column: impl Into<String>, actual: f64, bound: f64) -> Self {
        Self {
            column: column.into(),
            actual,
            criterion: Criterion::Below { bound },
            binding: true,
        }
    }

    pub fn informational(
        column: impl Into<String>,
        actual: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            binding: false,
            ..Self::new(column, actual, expected, tolerance)
        }
    }

    pub fn passed(&self) -> bool {
        match self.criterion {
            Criterion::Near {
                expected,
                tolerance,
            } => (self.actual - expected).abs() <= tolerance,
            Criterion::Below { bound } => self.actual < bound,
        }
    }

    fn describe(&self) -> String {
        let status = match (self.binding, self.passed()) {
            (true, true) => "ok",
            (true, false) => "FAIL",
            (false, true) => "info-ok",
            (false, false) => "info-off",
        };
        match self.criterion {
            Criterion::Near {
                expected,
                tolerance,
            } => format!(
                "{} {:.4} vs {}±{:e} {}",
                self.column, self.actual, expected, tolerance, status
            ),
            Criterion::Below { bound } => {
                format!(
                    "{} {:.4} < {:.4} {}",
                    self.column, self.actual, bound, status
                )
            }
        }
    }

    fn json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "column": self.column,
            "actual": self.actual,
            "binding": self.binding,
            "passed": self.passed(),
        });
        match self.criterion {
            Criterion::Near {
                expected,
                tolerance,
            } => {
                v["expected"] = expected.into();
                v["tolerance"] = tolerance.into();
            }
            Criterion::Below { bound } => v["below"] = bound.into(),
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Value>,
    pub checks: Vec<Check>,
}

impl Row {
    pub fn new(cells: Vec<Value>) -> Self {
        Self {
            cells,
            checks: Vec::new(),
        }
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.checks.extend(checks);
        self
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.binding && !c.passed())
    }

    pub fn verdict(&self) -> &'static str {
        if self.failed() {
            "FAIL"
        } else if self.checks.iter().any(|c| c.binding) {
            "pass"
        } else if self.checks.is_empty() {
            "-"
        } else {
            "info"
        }
    }

    fn checks_text(&self) -> String {
        self.checks
            .iter()
            .map(Check::describe)
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    /// Free-form lines printed under the Markdown table.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Row) {
        debug_assert_eq!(row.cells.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn failed(&self) -> bool {
        self.rows.iter().any(Row::failed)
    }

    pub fn cell(&self, row_label: &str, column: &str) -> Option<&Value> {
        let c = self.columns.iter().position(|h| h == column)?;
        self.rows
            .iter()
            .find(|r| matches!(r.cells.first(), Some(Value::Text(t)) if t == row_label))
            .and_then(|r| r.cells.get(c))
    }

    pub fn num(&self, row_label: &str, column: &str) -> Option<f64> {
        match self.cell(row_label, column)? {
            Value::Num(v) => Some(*v),
            Value::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Markdown => self.to_markdown(),
            OutputFormat::Ndjson => self.to_ndjson(),
        }
    }

    fn header(&self) -> Vec<String> {
        let mut h = self.columns.clone();
        h.push("verdict".into());
        h.push("checks".into());
        h
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header()).expect("in-memory write");
        for row in &self.rows {
            let mut rec: Vec<String> = row.cells.iter().map(Value::csv).collect();
            rec.push(row.verdict().into());
            rec.push(row.checks_text());
            w.write_record(rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    fn to_markdown(&self) -> String {
        let mut out = format!("### {}\n\n", self.title);
        let header = self.header();
        let _ = writeln!(out, "| {} |", header.join(" | "));
        let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
        for row in &self.rows {
            let mut cells: Vec<String> = row.cells.iter().map(Value::markdown).collect();
            cells.push(row.verdict().into());
            cells.push(row.checks_text());
            let cells: Vec<String> = cells.iter().map(|c| c.replace('|', "\\|")).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                let _ = writeln!(out, "{n}");
            }
        }
        out
    }

    fn to_ndjson(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            for (name, v) in self.columns.iter().zip(&row.cells) {
                obj.insert(name.clone(), v.json());
            }
            obj.insert("verdict".into(), row.verdict().into());
            let checks: Vec<_> = row.checks.iter().map(Check::json).collect();
            obj.insert("checks".into(), checks.into());
            out.push_str(&serde_json::Value::Object(obj).to_string());
            out.push('\n');
        }
        out
    }
}
