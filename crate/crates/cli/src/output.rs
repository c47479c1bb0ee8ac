//! Rendering of result tables as JSON, JSON lines or CSV.

use clap::ValueEnum;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rows of string cells under fixed columns, plus a metadata object.
pub struct Table {
    pub meta: Value,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    skipped: Vec<Value>,
    /// Emit rows as JSON lines followed by a summary line.
    pub json_lines: bool,
    /// Replaces the generated JSON document.
    pub json_override: Option<Value>,
}

impl Table {
    pub fn new(meta: Value, columns: &[&str]) -> Self {
        Table {
            meta,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            skipped: Vec::new(),
            json_lines: false,
            json_override: None,
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    /// Records an entry that has no value.
    pub fn skip(&mut self, key: String, e: &qtspecials::Error) {
        self.skipped.push(json!({ "key": key, "kind": e.kind(), "message": e.to_string() }));
    }

    fn row_object(&self, row: &[String]) -> Value {
        let mut m = Map::new();
        for (c, v) in self.columns.iter().zip(row) {
            m.insert(c.clone(), Value::String(v.clone()));
        }
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_json(&self) -> String {
        if let Some(v) = &self.json_override {
            return format!("{}\n", serde_json::to_string_pretty(v).expect("serialisable"));
        }
        if self.json_lines {
            let mut s = String::new();
            for r in &self.rows {
                let _ = writeln!(s, "{}", self.row_object(r));
            }
            let _ = writeln!(s, "{}", json!({ "summary": self.meta }));
            return s;
        }
        let rows: Vec<Value> = self.rows.iter().map(|r| self.row_object(r)).collect();
        let mut doc = json!({ "meta": self.meta, "rows": rows });
        if !self.skipped.is_empty() {
            doc["skipped"] = Value::Array(self.skipped.clone());
        }
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("serialisable"))
    }

    fn render_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
