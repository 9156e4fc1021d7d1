//! CSV and JSON writers. Complex numbers become `re`/`im` column pairs in CSV
//! and `{"re": .., "im": ..}` objects in JSON.

use std::io::Write;
use std::path::PathBuf;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{config, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn cx(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// A cell of a CSV row.
pub enum Cell {
    Real(f64),
    Complex(Complex64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Complex64> for Cell {
    fn from(v: Complex64) -> Self {
        Cell::Complex(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

fn flatten(row: &[Cell]) -> Vec<String> {
    let mut out = Vec::with_capacity(row.len());
    for c in row {
        match c {
            Cell::Real(v) => out.push(real(*v)),
            Cell::Complex(z) => {
                out.push(real(z.re));
                out.push(real(z.im));
            }
            Cell::Int(v) => out.push(v.to_string()),
            Cell::Text(s) => out.push(s.clone()),
        }
    }
    out
}

/// Sections of a CSV document: a header line and rows, separated by blank
/// lines. A section with an empty header is a single comment-style line.
#[derive(Default)]
pub struct CsvDoc {
    buf: Vec<u8>,
    sections: usize,
}

impl CsvDoc {
    pub fn section(&mut self, header: &[String], rows: &[Vec<Cell>]) -> CliResult<()> {
        if self.sections > 0 {
            self.buf.push(b'\n');
        }
        self.sections += 1;
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record(header).map_err(config)?;
        for r in rows {
            w.write_record(flatten(r)).map_err(config)?;
        }
        self.buf.extend(w.into_inner().map_err(config)?);
        Ok(())
    }

    pub fn line(&mut self, text: &str) {
        if self.sections > 0 {
            self.buf.push(b'\n');
        }
        self.sections += 1;
        self.buf.extend(text.as_bytes());
        self.buf.push(b'\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

/// Column names `name_re`, `name_im`.
pub fn pair(name: &str) -> [String; 2] {
    [format!("re_{name}"), format!("im_{name}")]
}

pub fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| config(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(bytes).map_err(config),
    }
}

pub fn json_bytes(v: &Value) -> CliResult<Vec<u8>> {
    let mut s = serde_json::to_vec_pretty(v).map_err(config)?;
    s.push(b'\n');
    Ok(s)
}

/// Shortest round-trip decimal, switching to exponent form away from unit scale.
fn real(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}
