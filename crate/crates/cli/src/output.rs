use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::{Format, GlobalOpts};

pub const SCHEMA: &str = "spectral-bundles/v1";

/// Every command's result, in the shape written to disk.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub schema: &'static str,
    pub command: String,
    pub params: Map<String, Value>,
    pub seed: u64,
    pub rows: Vec<Value>,
    pub residuals: Map<String, Value>,
    pub pass: bool,
}

impl Envelope {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_owned(),
            params: Map::new(),
            seed,
            rows: Vec::new(),
            residuals: Map::new(),
            pass: true,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> serde_json::Result<()> {
        self.params.insert(key.to_owned(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn residual(&mut self, key: &str, value: impl Serialize) -> serde_json::Result<()> {
        self.residuals.insert(key.to_owned(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn push_row(&mut self, row: impl Serialize) -> serde_json::Result<()> {
        self.rows.push(serde_json::to_value(row)?);
        Ok(())
    }
}

pub fn render(env: &Envelope, format: Format) -> serde_json::Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(env)? + "\n",
        Format::Csv => csv(&env.rows),
        Format::Pretty => pretty(env),
    })
}

pub fn emit(env: &Envelope, opts: &GlobalOpts) -> Result<(), crate::CliError> {
    let text = render(env, opts.format)?;
    match &opts.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for key in rows.iter().filter_map(Value::as_object).flat_map(Map::keys) {
        if !cols.contains(key) {
            cols.push(key.clone());
        }
    }
    cols
}

/// Scalar rendering of a JSON value: rationals become `p/q`, arrays are
/// joined with `;`, other objects are inlined as compact JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Object(m) => match (m.get("num").and_then(Value::as_str), m.get("den").and_then(Value::as_str)) {
            (Some(num), Some("1")) if m.len() == 2 => num.to_owned(),
            (Some(num), Some(den)) if m.len() == 2 => format!("{num}/{den}"),
            _ => v.to_string(),
        },
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn csv(rows: &[Value]) -> String {
    let cols = columns(rows);
    let mut out = cols.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in rows {
        let line: Vec<String> = cols
            .iter()
            .map(|c| csv_field(&row.get(c).map(cell).unwrap_or_default()))
            .collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn pretty(env: &Envelope) -> String {
    let mut out = String::new();
    let verdict = if env.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "{}  [{verdict}]  seed {}", env.command, env.seed);
    for (k, v) in &env.params {
        let _ = writeln!(out, "  {k} = {}", cell(v));
    }
    let cols = columns(&env.rows);
    if !cols.is_empty() {
        let table: Vec<Vec<String>> = env
            .rows
            .iter()
            .map(|r| cols.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
            .collect();
        let widths: Vec<usize> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| table.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| -> String {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_owned()
        };
        let _ = writeln!(out);
        let _ = writeln!(out, "{}", line(&cols));
        for r in &table {
            let _ = writeln!(out, "{}", line(r));
        }
    }
    if !env.residuals.is_empty() {
        let _ = writeln!(out);
        for (k, v) in &env.residuals {
            let _ = writeln!(out, "  {k}: {}", cell(v));
        }
    }
    out
}
