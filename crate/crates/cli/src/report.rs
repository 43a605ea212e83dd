use std::fmt::Display;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;

/// The single top-level object every command prints. Numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub s: Vec<String>,
    pub command: String,
    pub method: Option<String>,
    pub delta: Option<Vec<String>>,
    pub values: Map<String, Value>,
    pub counterexamples: Vec<Vec<String>>,
    pub elapsed_ms: Option<String>,
    /// Point rows for CSV output; mirrored in `values` for the other formats.
    #[serde(skip)]
    pub points: Option<Vec<Vec<String>>>,
}

impl Report {
    pub fn new(s: &[u64], command: &str) -> Self {
        Report {
            s: strings(s),
            command: command.to_string(),
            method: None,
            delta: None,
            values: Map::new(),
            counterexamples: Vec::new(),
            elapsed_ms: None,
            points: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.values.insert(key.to_string(), value.into());
    }

    pub fn add_counterexample<T: Display>(&mut self, items: &[T]) {
        self.counterexamples.push(strings(items));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("report serializes");
                out.push('\n');
                out
            }
            Format::Csv => self.render_csv(),
            Format::Plain => self.render_plain(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        if let Some(rows) = &self.points {
            let dim = rows.first().map_or(0, |r| r.len().saturating_sub(1));
            let header: Vec<String> = (1..=dim)
                .map(|i| format!("x{i}"))
                .chain(["level".to_string()])
                .collect();
            let _ = writeln!(out, "{}", header.join(","));
            for row in rows {
                let _ = writeln!(out, "{}", row.join(","));
            }
            return out;
        }
        let _ = writeln!(out, "key,value");
        for (k, v) in self.flat_rows() {
            let _ = writeln!(out, "{k},{}", csv_field(&v));
        }
        out
    }

    fn render_plain(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.flat_rows() {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }

    fn flat_rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![
            ("s".to_string(), self.s.join(",")),
            ("command".to_string(), self.command.clone()),
        ];
        if let Some(m) = &self.method {
            rows.push(("method".to_string(), m.clone()));
        }
        if let Some(d) = &self.delta {
            rows.push(("delta".to_string(), d.join(",")));
        }
        for (k, v) in &self.values {
            flatten_value(k, v, &mut rows);
        }
        for (i, c) in self.counterexamples.iter().enumerate() {
            rows.push((format!("counterexample.{}", i + 1), c.join(",")));
        }
        if let Some(ms) = &self.elapsed_ms {
            rows.push(("elapsed_ms".to_string(), ms.clone()));
        }
        rows
    }
}

fn flatten_value(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten_value(&format!("{prefix}.{k}"), inner, rows);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            rows.push((
                prefix.to_string(),
                items.iter().map(scalar).collect::<Vec<_>>().join(","),
            ));
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten_value(&format!("{prefix}.{}", i + 1), inner, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(v: &str) -> String {
    if v.contains(',') || v.contains('"') {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

pub fn strings<T: Display>(items: &[T]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

pub fn string_array<T: Display>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn num<T: Display>(x: T) -> Value {
    Value::String(x.to_string())
}

pub fn flag(b: bool) -> Value {
    Value::String(b.to_string())
}
