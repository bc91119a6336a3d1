//! Reports: the command line, input digests, a deterministic payload and
//! the wall time. Only the wall time varies between identical runs.

use serde_json::{json, Map, Value};

use crate::formats::Loaded;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows for the CSV rendering of a payload.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// What a command hands back for reporting.
#[derive(Debug, Default)]
pub struct Outcome {
    pub payload: Map<String, Value>,
    pub table: Option<Table>,
    /// Generated file written to `-o`, for generating commands.
    pub artifact: Option<Value>,
    /// Further generated files named by command flags.
    pub extra_files: Vec<(std::path::PathBuf, Value)>,
}

impl Outcome {
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.payload.insert(key.to_string(), value.into());
    }
}

pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<(String, String)>,
    pub outcome: Outcome,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(
        command: Vec<String>,
        inputs: &[Loaded],
        outcome: Outcome,
        wall_time_ms: f64,
    ) -> Self {
        let inputs = inputs
            .iter()
            .map(|l| (l.path.clone(), l.sha256.clone()))
            .collect();
        Report {
            command,
            inputs,
            outcome,
            wall_time_ms,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let inputs: Vec<Value> = self
                    .inputs
                    .iter()
                    .map(|(p, d)| json!({ "path": p, "sha256": d }))
                    .collect();
                let doc = json!({
                    "command": self.command,
                    "inputs": inputs,
                    "payload": Value::Object(self.outcome.payload.clone()),
                    "wall_time_ms": self.wall_time_ms,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = format!("# command: {}\n", self.command.join(" "));
        for (p, d) in &self.inputs {
            out.push_str(&format!("# input: {p} sha256 {d}\n"));
        }
        out.push_str(&format!("# wall_time_ms: {:.3}\n", self.wall_time_ms));
        match &self.outcome.table {
            Some(t) => {
                out.push_str(&csv_line(&t.header));
                for row in &t.rows {
                    out.push_str(&csv_line(row));
                }
            }
            None => {
                out.push_str("key,value\n");
                for (k, v) in &self.outcome.payload {
                    let text = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    out.push_str(&csv_line(&[k.clone(), text]));
                }
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}
