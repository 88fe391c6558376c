//! Structured reports: a versioned JSON document plus a plain-text
//! rendering.  Every dimension appearing in the JSON is printed from
//! the same table, so the two views cannot disagree.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// A finished report: machine- and human-readable views plus the
/// process exit code (0 success/VALID, 2 verdict failure).
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit: i32,
}

impl Report {
    pub fn new(command: &str, datum: &str) -> Report {
        Report {
            json: json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "datum": datum,
            }),
            text: String::new(),
            exit: 0,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.json[key] = value;
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    /// Attach a `(a, b) -> dim` table under `key` and render it as a
    /// grid (rows = second index, descending; columns = first index).
    pub fn table(
        &mut self,
        key: &str,
        title: &str,
        table: &BTreeMap<(i64, i64), usize>,
        row_label: &str,
        col_label: &str,
    ) {
        self.set(key, table_json(table));
        self.line(format!("{title}:"));
        self.text.push_str(&render_grid(table, row_label, col_label));
    }
}

/// JSON encoding of a dimension table: a list of `[a, b, dim]` triples.
pub fn table_json(table: &BTreeMap<(i64, i64), usize>) -> Value {
    Value::Array(
        table
            .iter()
            .filter(|(_, d)| **d > 0)
            .map(|((a, b), d)| json!([a, b, d]))
            .collect(),
    )
}

/// Render a dimension table as an array display: rows are the second
/// index (descending, like weight rows in the source arrays), columns
/// the first.
pub fn render_grid(table: &BTreeMap<(i64, i64), usize>, row_label: &str, col_label: &str) -> String {
    let live: Vec<(&(i64, i64), &usize)> = table.iter().filter(|(_, d)| **d > 0).collect();
    if live.is_empty() {
        return "  (empty)\n".to_string();
    }
    let amin = live.iter().map(|((a, _), _)| *a).min().unwrap();
    let amax = live.iter().map(|((a, _), _)| *a).max().unwrap();
    let bmin = live.iter().map(|((_, b), _)| *b).min().unwrap().min(0);
    let bmax = live.iter().map(|((_, b), _)| *b).max().unwrap();

    let cell = |a: i64, b: i64| -> String {
        match table.get(&(a, b)) {
            Some(d) if *d > 0 => d.to_string(),
            _ => ".".to_string(),
        }
    };
    let width = live
        .iter()
        .map(|(_, d)| d.to_string().len())
        .max()
        .unwrap()
        .max(format!("{amax}").len())
        .max(2);

    let mut out = String::new();
    for b in (bmin..=bmax).rev() {
        let _ = write!(out, "  {row_label}={b:<3}|");
        for a in amin..=amax {
            let _ = write!(out, " {:>width$}", cell(a, b));
        }
        out.push('\n');
    }
    let _ = write!(out, "  {:<4}   +", "");
    for _ in amin..=amax {
        let _ = write!(out, "{}", "-".repeat(width + 1));
    }
    out.push('\n');
    let _ = write!(out, "  {:<4}    ", "");
    for a in amin..=amax {
        let _ = write!(out, " {a:>width$}");
    }
    let _ = writeln!(out, "   ({col_label})");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_text_show_the_same_dimensions() {
        let mut t = BTreeMap::new();
        t.insert((0i64, 0i64), 1usize);
        t.insert((0, 2), 1);
        t.insert((1, 2), 5);
        t.insert((2, 1), 0);
        let mut r = Report::new("e2", "demo");
        r.table("e2", "E2 dimensions", &t, "q", "p");
        // Every positive entry is present in both views.
        for ((a, b), d) in t.iter().filter(|(_, d)| **d > 0) {
            assert!(r.json["e2"]
                .as_array()
                .unwrap()
                .contains(&json!([a, b, d])));
        }
        assert!(r.text.contains('5'));
        assert_eq!(r.json["schema_version"], json!(SCHEMA_VERSION));
        // Zero entries are dropped from JSON and rendered as dots.
        assert_eq!(r.json["e2"].as_array().unwrap().len(), 3);
    }
}
