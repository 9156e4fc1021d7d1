//! Parsing of flux, extension and grid arguments.

use std::path::Path;

use abpauli::extension::{reduce_flux, ExtensionFile, ExtensionParam, FluxAlpha, Herm4};
use num_complex::Complex64;
use serde_json::Value;

use crate::error::{config, CliError, CliResult};

pub fn flux(raw: f64) -> CliResult<FluxAlpha> {
    let a = reduce_flux(raw).map_err(config)?;
    if a.winding() != 0 {
        eprintln!("note: flux {raw} reduced to alpha = {} (winding {})", a.alpha(), a.winding());
    }
    Ok(a)
}

/// `friedrichs`, `krein`, `theta=<c>`, `beta=<c>` (scalar multiples of the
/// identity), an inline JSON object, or a path to a JSON file.
pub fn extension(spec: &str) -> CliResult<ExtensionParam> {
    let s = spec.trim();
    let scalar = |v: &str| v.trim().parse::<f64>().map_err(|e| config(format!("extension scalar '{v}': {e}")));
    match s {
        "friedrichs" => return Ok(ExtensionParam::Friedrichs),
        "krein" => return Ok(ExtensionParam::Theta(Herm4::zero())),
        _ => {}
    }
    if let Some(v) = s.strip_prefix("theta=") {
        return Ok(ExtensionParam::Theta(Herm4::scalar(scalar(v)?)));
    }
    if let Some(v) = s.strip_prefix("beta=") {
        return Ok(ExtensionParam::Beta(Herm4::scalar(scalar(v)?)));
    }
    let json = if s.starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(Path::new(s)).map_err(|e| config(format!("extension file '{s}': {e}")))?
    };
    ExtensionFile::parse(&json).map_err(config)
}

pub fn save_extension(path: &Path, ext: &ExtensionParam) -> CliResult<()> {
    let text = serde_json::to_string_pretty(&ExtensionFile::from_param(ext)).map_err(config)?;
    std::fs::write(path, text + "\n").map_err(|e| config(format!("{}: {e}", path.display())))
}

/// Inclusive grid `start:stop:count`, or a single value.
pub fn grid(spec: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| config(format!("grid '{spec}': {e}")));
    match parts.as_slice() {
        [v] => Ok(vec![num(v)?]),
        [a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.trim().parse().map_err(|e| config(format!("grid '{spec}': {e}")))?;
            if n == 0 || !a.is_finite() || !b.is_finite() {
                return Err(config(format!("grid '{spec}': need finite bounds and a positive count")));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            Ok((0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect())
        }
        _ => Err(config(format!("grid '{spec}': expected start:stop:count"))),
    }
}

/// Comma-separated list of reals.
pub fn list(spec: &str) -> CliResult<Vec<f64>> {
    spec.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| config(format!("'{spec}': {e}"))))
        .collect()
}

/// A complex number from `re,im` or a bare real.
pub fn complex(spec: &str) -> CliResult<Complex64> {
    match list(spec)?.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err(config(format!("complex number '{spec}': expected re or re,im"))),
    }
}

fn complex_value(v: &Value) -> CliResult<Complex64> {
    let bad = || config(format!("complex entry {v}: expected a number, [re, im] or {{\"re\":..,\"im\":..}}"));
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().ok_or_else(bad)?, 0.0)),
        Value::Array(a) if a.len() == 2 => Ok(Complex64::new(
            a[0].as_f64().ok_or_else(bad)?,
            a[1].as_f64().ok_or_else(bad)?,
        )),
        Value::Object(o) => Ok(Complex64::new(
            o.get("re").and_then(Value::as_f64).ok_or_else(bad)?,
            o.get("im").and_then(Value::as_f64).unwrap_or(0.0),
        )),
        _ => Err(bad()),
    }
}

/// 2x2 complex matrix from JSON rows.
pub fn matrix2(spec: &str) -> CliResult<[[Complex64; 2]; 2]> {
    let v: Value = serde_json::from_str(spec).map_err(|e| config(format!("matrix '{spec}': {e}")))?;
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| config(format!("matrix '{spec}': expected two rows")))?;
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| config(format!("matrix '{spec}': rows need two entries")))?;
        for (j, e) in row.iter().enumerate() {
            out[i][j] = complex_value(e)?;
        }
    }
    Ok(out)
}

/// Four complex charges in flat channel order, as a JSON array.
pub fn charges(spec: &str) -> CliResult<abpauli::extension::Charge4> {
    let v: Value = serde_json::from_str(spec).map_err(|e| config(format!("charges '{spec}': {e}")))?;
    let a = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| config("charges: expected a JSON array of 4 entries"))?;
    let mut q = abpauli::extension::Charge4::zeros();
    for (i, e) in a.iter().enumerate() {
        q[i] = complex_value(e)?;
    }
    Ok(q)
}

pub fn real_matrix2(m: &[[Complex64; 2]; 2]) -> CliResult<[[f64; 2]; 2]> {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            if m[i][j].im != 0.0 {
                return Err(CliError::Config("T must be a real matrix".into()));
            }
            out[i][j] = m[i][j].re;
        }
    }
    Ok(out)
}

pub fn as_config(e: abpauli::Error) -> CliError {
    config(e)
}
