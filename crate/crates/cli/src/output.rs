//! Rendering and writing of command results.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Opt(Option<f64>),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Opt(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub headers: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

/// A command result. JSON carries full precision; CSV is rounded.
#[derive(Debug, Clone)]
pub struct Rendered {
    pub json: Value,
    pub table: Option<Table>,
}

impl Rendered {
    pub fn new(value: &impl Serialize, table: Option<Table>) -> Result<Self> {
        Ok(Self {
            json: serde_json::to_value(value)?,
            table,
        })
    }

    pub fn render(&self, format: Format, digits: usize) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.json)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .context("this command has no CSV form, use --format json")?;
                render_csv(table, digits)
            }
        }
    }
}

fn render_csv(table: &Table, digits: usize) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(table.headers)?;
    for row in &table.rows {
        debug_assert_eq!(row.len(), table.headers.len());
        w.write_record(row.iter().map(|c| match c {
            Cell::Num(v) => format_sig(*v, digits),
            Cell::Opt(Some(v)) => format_sig(*v, digits),
            Cell::Opt(None) => String::new(),
            Cell::Text(s) => s.clone(),
        }))?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

/// `value` rounded to `digits` significant figures, positional when the
/// exponent is moderate, trailing zeros trimmed.
pub fn format_sig(value: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if !value.is_finite() {
        return value.to_string();
    }
    if value == 0.0 {
        return "0".to_owned();
    }
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{value:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_owned()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

/// Write to `path` via a sibling temporary file and a rename, or to stdout.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(bytes)?;
        return Ok(stdout.flush()?);
    };
    let name = path
        .file_name()
        .with_context(|| format!("{}: not a file path", path.display()))?;
    let tmp = path.with_file_name(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.with_context(|| format!("writing {}", path.display()))
}
