//! Report documents shared by every subcommand.
//!
//! A command produces one [`ReportDocument`]: command metadata, rows, and a
//! pass/fail summary. Emission is deterministic; the only field that varies
//! between identical runs is `elapsed_ms`, and the human format keeps
//! timing on stderr so stdout stays byte-identical.

use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// How reports land on stdout.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub params: Value,
    pub version: String,
    pub rows: Vec<Value>,
    pub summary: Summary,
    pub elapsed_ms: u128,
}

pub struct ReportBuilder {
    command: String,
    params: Value,
    rows: Vec<Value>,
    pass: usize,
    fail: usize,
    start: Instant,
    /// human-format lines mirroring the rows
    lines: Vec<String>,
    /// csv header + lines
    csv_header: String,
    csv_lines: Vec<String>,
}

impl ReportBuilder {
    pub fn new(command: &str, params: Value) -> Self {
        ReportBuilder {
            command: command.to_string(),
            params,
            rows: Vec::new(),
            pass: 0,
            fail: 0,
            start: Instant::now(),
            lines: Vec::new(),
            csv_header: String::new(),
            csv_lines: Vec::new(),
        }
    }

    pub fn csv_header(&mut self, header: &str) {
        self.csv_header = header.to_string();
    }

    /// Add one row in all three renderings; `ok` feeds the summary.
    pub fn row(&mut self, ok: bool, json_row: Value, human: String, csv: String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
        }
        self.rows.push(json_row);
        self.lines.push(human);
        self.csv_lines.push(csv);
    }

    pub fn finish(self, format: Format) -> bool {
        let ok = self.fail == 0;
        match format {
            Format::Json => {
                let doc = ReportDocument {
                    command: self.command,
                    params: self.params,
                    version: VERSION.to_string(),
                    rows: self.rows,
                    summary: Summary { pass: self.pass, fail: self.fail },
                    elapsed_ms: self.start.elapsed().as_millis(),
                };
                println!("{}", serde_json::to_string(&doc).expect("report serializes"));
            }
            Format::Csv => {
                if !self.csv_header.is_empty() {
                    println!("{}", self.csv_header);
                }
                for line in &self.csv_lines {
                    println!("{line}");
                }
                eprintln!(
                    "# {}: pass {} fail {} ({} ms)",
                    self.command,
                    self.pass,
                    self.fail,
                    self.start.elapsed().as_millis()
                );
            }
            Format::Human => {
                println!("== {} ==", self.command);
                if self.params != json!({}) {
                    println!("params: {}", self.params);
                }
                for line in &self.lines {
                    println!("{line}");
                }
                println!("summary: pass {} fail {}", self.pass, self.fail);
                eprintln!("elapsed: {} ms", self.start.elapsed().as_millis());
            }
        }
        ok
    }
}
