//! Line-oriented structured reports with a versioned header.
//!
//! A report is a sequence of `key value` lines (keys contain no spaces),
//! with multi-line payloads wrapped in `begin <name>` / `end <name>`
//! blocks. Output is byte-deterministic: entries appear exactly in the
//! order they were added and nothing is timestamped unless the caller
//! explicitly appends timing entries.

use std::fmt::Write as _;

pub const REPORT_HEADER: &str = "arrowlab-report v1";

#[derive(Debug, Clone, Default)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new(kind: &str) -> Report {
        let mut r = Report { lines: Vec::new() };
        r.entry("report", kind);
        r
    }

    pub fn entry(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        debug_assert!(!key.contains(' '));
        self.lines.push(format!("{key} {value}"));
        self
    }

    /// Embeds a multi-line payload (e.g. a graph in its text format).
    pub fn block(&mut self, name: &str, payload: &str) -> &mut Self {
        self.lines.push(format!("begin {name}"));
        for line in payload.lines() {
            self.lines.push(line.to_string());
        }
        self.lines.push(format!("end {name}"));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{REPORT_HEADER}").unwrap();
        for line in &self.lines {
            writeln!(out, "{line}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_header_and_blocks() {
        let mut r = Report::new("demo");
        r.entry("answer", 42);
        r.block("payload", "a\nb\n");
        let text = r.render();
        assert_eq!(
            text,
            "arrowlab-report v1\nreport demo\nanswer 42\nbegin payload\na\nb\nend payload\n"
        );
    }
}
