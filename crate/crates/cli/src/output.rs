use serde_json::json;

use crate::args::Format;

/// Rows of rendered cells plus trailing notes such as check summaries.
#[derive(Debug, Default)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    /// A single requested key: text output shows only its last cell.
    pub single: bool,
    /// Some check reported a mathematical failure.
    pub failed: bool,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&'static str]) -> Self {
        Table {
            command,
            columns: columns.to_vec(),
            ..Table::default()
        }
    }

    pub fn note(&mut self, label: &str, passed: bool, summary: impl std::fmt::Display) {
        self.failed |= !passed;
        self.notes.push(format!("{label}: {summary}"));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for row in &self.rows {
                    if self.single {
                        out.push_str(row.last().map(String::as_str).unwrap_or(""));
                    } else {
                        out.push_str(&row.join("\t"));
                    }
                    out.push('\n');
                }
                for n in &self.notes {
                    out.push_str(&format!("# {n}\n"));
                }
                out
            }
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "columns": self.columns,
                    "rows": self.rows,
                    "notes": self.notes,
                    "status": if self.failed { "failed" } else { "ok" },
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}
