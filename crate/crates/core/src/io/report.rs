//! Deterministic reports: JSON, CSV tables or an aligned text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The check does not apply (e.g. outside the linear regime).
    NotApplicable,
    /// A computation without a pass/fail criterion.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// All arithmetic exact; always true.
    pub exact: bool,
    /// Results hold only inside the truncation window.
    pub truncated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(i32, i32)>,
    pub message: String,
}

impl Verdict {
    pub fn info(message: impl Into<String>) -> Self {
        Self::new(Status::Info, message)
    }

    pub fn new(status: Status, message: impl Into<String>) -> Self {
        Self {
            status,
            exact: true,
            truncated: false,
            window: None,
            message: message.into(),
        }
    }

    pub fn check(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Self {
        if ok {
            Self::new(Status::Pass, pass)
        } else {
            Self::new(Status::Fail, fail)
        }
    }

    pub fn truncated(mut self, window: Option<(i32, i32)>) -> Self {
        self.truncated = true;
        self.window = window;
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// `degree → dim`.
    pub fn from_dims(name: &str, dims: &BTreeMap<i32, usize>) -> Self {
        let mut t = Self::new(name, &["degree", "dim"]);
        for (d, n) in dims {
            t.push(vec![d.to_string(), n.to_string()]);
        }
        t
    }

    /// `(degree, weight) → dim`.
    pub fn from_bigraded(name: &str, dims: &BTreeMap<(i32, u32), usize>) -> Self {
        let mut t = Self::new(name, &["degree", "weight", "dim"]);
        for ((d, w), n) in dims {
            t.push(vec![d.to_string(), w.to_string(), n.to_string()]);
        }
        t
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JobEcho {
    pub command: String,
    pub max_weight: u32,
    pub depth: usize,
    pub degree_window: Option<(i32, i32)>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub job: JobEcho,
    /// Input role → sha256 of the file contents.
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub tables: Vec<Table>,
    pub result: serde_json::Value,
    pub timing_ms: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Table => self.text(),
        }
    }

    /// The JSON rendering with the timing field removed.
    pub fn canonical(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v.as_object_mut().expect("object").remove("timing_ms");
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(vec![]);
        for t in &self.tables {
            let mut header = vec!["table".to_string()];
            header.extend(t.columns.iter().cloned());
            w.write_record(&header).expect("in-memory csv");
            for r in &t.rows {
                let mut row = vec![t.name.clone()];
                row.extend(r.iter().cloned());
                w.write_record(&row).expect("in-memory csv");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8")
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let status = serde_json::to_value(self.verdict.status).expect("status");
        let _ = writeln!(s, "{} {}: {}", self.tool, self.job.command, status.as_str().unwrap_or(""));
        let _ = writeln!(s, "  {}", self.verdict.message);
        if let Some((a, b)) = self.verdict.window {
            let _ = writeln!(s, "  window: {a}..{b}");
        }
        for t in &self.tables {
            let _ = writeln!(s, "\n{}", t.name);
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| {
                    t.rows
                        .iter()
                        .filter_map(|r| r.get(i))
                        .map(|c| c.chars().count())
                        .chain([t.columns[i].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| -> String {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}", w = *w))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(s, "  {}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(s, "  {}", line(r));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut t = Table::new("dims", &["degree", "dim"]);
        t.push(vec!["0".into(), "1".into()]);
        t.push(vec!["3".into(), "1".into()]);
        Report {
            tool: "dgla".into(),
            version: "0".into(),
            job: JobEcho {
                command: "ce-cohomology".into(),
                max_weight: 3,
                depth: 2,
                degree_window: None,
                seed: 0,
            },
            inputs: [("in".into(), sha256_hex(b"abc"))].into(),
            verdict: Verdict::info("ok"),
            tables: vec![t],
            result: serde_json::json!({"a": 1}),
            timing_ms: 12,
        }
    }

    #[test]
    fn renderings() {
        let r = sample();
        assert_eq!(r.inputs["in"], "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        assert_eq!(r.render(Format::Csv), "table,degree,dim\ndims,0,1\ndims,3,1\n");
        assert!(r.render(Format::Table).contains("degree  dim"));
        let mut r2 = sample();
        r2.timing_ms = 99;
        assert_eq!(r.canonical(), r2.canonical());
        assert_ne!(r.render(Format::Json), r2.render(Format::Json));
    }
}
