//! Structured command output.
//!
//! A [`Report`] renders either as JSON (`--json`) or as plain text. Both
//! renderings are produced from the same fields, and the text form prints
//! every one of them.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dsl::{Diagnostic, DiagnosticKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Every check passed. Exit code 0.
    Pass,
    /// An axiom or theorem check failed. Exit code 1.
    Fail,
    /// Parse, argument or I/O failure. Exit code 2.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub statement: String,
    pub holds: bool,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremEntry {
    pub name: String,
    pub statement: String,
    pub applicable: bool,
    /// `None` when the hypothesis is unmet.
    pub holds: Option<bool>,
    pub note: Option<String>,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub warnings: Vec<String>,
    pub diagnostics: Vec<Diagnostic>,
    pub axioms: Vec<AxiomEntry>,
    pub theorems: Vec<TheoremEntry>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Pass,
            warnings: Vec::new(),
            diagnostics: Vec::new(),
            axioms: Vec::new(),
            theorems: Vec::new(),
            tables: Vec::new(),
        }
    }

    /// Raises the status; an error outranks a failure.
    pub fn mark(&mut self, status: Status) {
        self.status = match (self.status, status) {
            (Status::Error, _) | (_, Status::Error) => Status::Error,
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            _ => Status::Pass,
        };
    }

    /// Records a non-parse error (I/O, argument, domain) and marks the
    /// report as errored.
    pub fn error(&mut self, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            line: 0,
            column: 0,
            kind: DiagnosticKind::Input,
            message: message.into(),
            expected: Vec::new(),
        });
        self.mark(Status::Error);
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for d in &self.diagnostics {
            if d.line == 0 {
                let _ = writeln!(out, "error: {}", d.message);
            } else {
                let _ = writeln!(out, "error: {d}");
            }
        }
        for a in &self.axioms {
            let verdict = if a.holds { "pass" } else { "FAIL" };
            let _ = writeln!(out, "axiom {} {verdict}: {}", a.axiom, a.statement);
            for w in &a.witnesses {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        for t in &self.theorems {
            let verdict = match (t.applicable, t.holds) {
                (false, _) | (_, None) => "not applicable",
                (true, Some(true)) => "holds",
                (true, Some(false)) => "FAILS",
            };
            let _ = writeln!(out, "theorem {} {verdict}: {}", t.name, t.statement);
            if let Some(note) = &t.note {
                let _ = writeln!(out, "  note: {note}");
            }
            for w in &t.witnesses {
                let _ = writeln!(out, "  witness: {w}");
            }
        }
        for table in &self.tables {
            let _ = writeln!(out, "table {}:", table.name);
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|k| {
                    table
                        .rows
                        .iter()
                        .map(|r| r[k].chars().count())
                        .chain([table.columns[k].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut line = |cells: &[String]| {
                let mut text = String::from(" ");
                for (cell, w) in cells.iter().zip(&widths) {
                    let _ = write!(text, " {cell:<w$}");
                }
                let _ = writeln!(out, "{}", text.trim_end());
            };
            line(&table.columns);
            for row in &table.rows {
                line(row);
            }
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        out
    }
}
