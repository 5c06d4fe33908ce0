//! Command output: tables plus pass/fail counters, rendered as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

/// A titled table of strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(out, "{}", line(&self.columns));
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row));
        }
    }
}

/// One `key: value` line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

/// Everything a command produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    /// The command line, echoed.
    pub command: String,
    /// `key: value` facts shown before the tables.
    pub summary: Vec<Fact>,
    pub tables: Vec<Table>,
    pub passed: u64,
    pub failed: u64,
    pub exit_status: i32,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            summary: Vec::new(),
            tables: Vec::new(),
            passed: 0,
            failed: 0,
            exit_status: 0,
        }
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.summary.push(Fact {
            key: key.to_string(),
            value: value.to_string(),
        });
    }

    /// The value of a summary fact.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.summary
            .iter()
            .find(|f| f.key == key)
            .map(|f| f.value.as_str())
    }

    pub fn table(&self, title: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.title == title)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        let width = self
            .summary
            .iter()
            .map(|f| f.key.chars().count())
            .max()
            .unwrap_or(0);
        for f in &self.summary {
            let pad = " ".repeat(width - f.key.chars().count());
            let _ = writeln!(out, "{}{pad}  {}", f.key, f.value);
        }
        for t in &self.tables {
            out.push('\n');
            t.render(&mut out);
        }
        if self.passed + self.failed > 0 {
            let _ = writeln!(out, "\npassed {}, failed {}", self.passed, self.failed);
        }
        let _ = writeln!(out, "exit status {}", self.exit_status);
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout_pads_columns() {
        let mut r = Report::new("demo");
        r.fact("group", "Z3");
        let mut t = Table::new("rows", &["a", "long header"]);
        t.push(vec!["12345".into(), "x".into()]);
        r.tables.push(t);
        let text = r.render_text();
        assert_eq!(
            text,
            "$ demo\ngroup  Z3\n\nrows\na      long header\n12345  x\nexit status 0\n"
        );
        assert_eq!(r.get("group"), Some("Z3"));
    }

    #[test]
    fn json_is_stable() {
        let r = Report::new("demo");
        assert_eq!(r.render_json(), r.clone().render_json());
        assert!(r.render_json().contains("\"exit_status\": 0"));
    }
}
