//! Line-oriented report: `key: value` sections plus embedded CSV blocks.
//!
//! ```text
//! laborshare-report 1
//! [meta]
//! command: fit
//! invocation: fit --labor data/us.csv ...
//! [results]
//! rmse: 0.0174
//! [warnings]
//! - 2 years dropped from labor share
//! [csv fitted]
//! year,observed,fitted
//! 1950,0.472,0.468
//! [end]
//! ```
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! parsed value is bit-identical to the one that was reported.

use std::fmt::Write as _;

pub const FORMAT_HEADER: &str = "laborshare-report 1";

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub meta: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub warnings: Vec<String>,
    /// `(name, csv text with header)`.
    pub tables: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, invocation: &[String]) -> Self {
        let mut report = Report::default();
        report.meta("command", command);
        report.meta("invocation", shell_words::join(invocation));
        report
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn result(&mut self, key: &str, value: impl ToString) {
        self.results.push((key.to_string(), value.to_string()));
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn table(&mut self, name: &str, csv: String) {
        self.tables.push((name.to_string(), csv));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{FORMAT_HEADER}");
        for (title, pairs) in [("meta", &self.meta), ("results", &self.results)] {
            let _ = writeln!(out, "[{title}]");
            for (k, v) in pairs {
                let _ = writeln!(out, "{k}: {}", one_line(v));
            }
        }
        let _ = writeln!(out, "[warnings]");
        for w in &self.warnings {
            let _ = writeln!(out, "- {}", one_line(w));
        }
        for (name, csv) in &self.tables {
            let _ = writeln!(out, "[csv {name}]");
            out.push_str(csv);
            if !csv.ends_with('\n') {
                out.push('\n');
            }
        }
        out.push_str("[end]\n");
        out
    }

    /// Parses rendered text back. Used by `replay` and by tests.
    pub fn parse(text: &str) -> Result<Report, String> {
        let mut lines = text.lines();
        if lines.next() != Some(FORMAT_HEADER) {
            return Err(format!("missing '{FORMAT_HEADER}' header"));
        }
        let mut report = Report::default();
        let mut section = String::new();
        let mut ended = false;
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            if ended {
                return Err(format!("line {lineno}: content after [end]"));
            }
            if line == "[end]" {
                ended = true;
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                if let Some(table) = name.strip_prefix("csv ") {
                    report.tables.push((table.to_string(), String::new()));
                }
                section = name.to_string();
                continue;
            }
            match section.as_str() {
                "meta" | "results" => {
                    let (k, v) = line
                        .split_once(": ")
                        .ok_or_else(|| format!("line {lineno}: expected 'key: value'"))?;
                    let target = if section == "meta" {
                        &mut report.meta
                    } else {
                        &mut report.results
                    };
                    target.push((k.to_string(), v.to_string()));
                }
                "warnings" => {
                    let w = line
                        .strip_prefix("- ")
                        .ok_or_else(|| format!("line {lineno}: expected '- warning'"))?;
                    report.warnings.push(w.to_string());
                }
                s if s.starts_with("csv ") => {
                    let csv = &mut report.tables.last_mut().expect("table opened").1;
                    csv.push_str(line);
                    csv.push('\n');
                }
                _ => return Err(format!("line {lineno}: text outside a section")),
            }
        }
        if !ended {
            return Err("report is truncated (no [end])".into());
        }
        Ok(report)
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        lookup(&self.meta, key)
    }

    pub fn result_value(&self, key: &str) -> Option<&str> {
        lookup(&self.results, key)
    }

    pub fn result_f64(&self, key: &str) -> Option<f64> {
        self.result_value(key)?.parse().ok()
    }

    pub fn table_csv(&self, name: &str) -> Option<&str> {
        self.tables
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_str())
    }

    /// Arguments recorded in the `invocation` meta line.
    pub fn invocation(&self) -> Result<Vec<String>, String> {
        let line = self
            .meta_value("invocation")
            .ok_or("report has no invocation")?;
        shell_words::split(line).map_err(|e| format!("bad invocation: {e}"))
    }
}

fn lookup<'a>(pairs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    pairs
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}
