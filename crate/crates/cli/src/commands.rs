//! Subcommand implementations.

use std::f64::consts::PI;

use abpauli::dirac::{dirac_membership, dirac_square_charges, dirac_traces, dirac_traces_numeric, DiracSpinor, TraceKind};
use abpauli::extension::{Charge4, ExtensionFile, ExtensionParam, FluxAlpha, Polar, Side, SpectralPoint, Spin};
use abpauli::resolvent::{
    bound_state, exceptional_points, krein_kernel, point_spectrum, single_layer, zero_resonance, SpectrumOptions,
};
use abpauli::scattering::{scattering_amplitude, theta_eigenfunction};
use abpauli::symmetry::{classify_dirac, classify_pauli, PlaneTransform, SpinMatrix, SymmetryClass, SymmetryVerdict};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config;
use crate::error::{numeric, CliError, CliResult};
use crate::output::{cx, emit, json_bytes, pair, Cell, CsvDoc, Format};
use crate::Common;

const CHANNEL_NAMES: [&str; 4] = ["up0", "up_m1", "down0", "down_m1"];
const SPIN_PAIRS: [(Spin, Spin, &str); 4] = [
    (Spin::Up, Spin::Up, "uu"),
    (Spin::Up, Spin::Down, "ud"),
    (Spin::Down, Spin::Up, "du"),
    (Spin::Down, Spin::Down, "dd"),
];

struct Setup {
    alpha: FluxAlpha,
    ext: ExtensionParam,
}

fn setup(c: &Common) -> CliResult<Setup> {
    if !(c.tol > 0.0 && c.tol < 1.0) {
        return Err(CliError::Config(format!("--tol must lie in (0, 1), got {}", c.tol)));
    }
    let alpha = config::flux(c.alpha)?;
    let ext = config::extension(&c.ext)?;
    if let Some(p) = &c.save_ext {
        config::save_extension(p, &ext)?;
    }
    Ok(Setup { alpha, ext })
}

fn header_json(c: &Common, s: &Setup) -> Value {
    json!({
        "alpha": s.alpha.alpha(),
        "winding": s.alpha.winding(),
        "extension": serde_json::to_value(ExtensionFile::from_param(&s.ext)).unwrap_or(Value::Null),
        "tol": c.tol,
    })
}

/// Ordered parallel map over grid points on a pool of `workers` threads.
fn par_map<T: Sync, R: Send>(workers: usize, items: &[T], f: impl Fn(&T) -> CliResult<R> + Sync) -> CliResult<Vec<R>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config(format!("--workers: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

fn charge_columns(prefix: &str) -> Vec<String> {
    CHANNEL_NAMES.iter().flat_map(|n| pair(&format!("{prefix}_{n}"))).collect()
}

fn charge_cells(q: &Charge4) -> Vec<Cell> {
    q.iter().map(|z| Cell::Complex(*z)).collect()
}

fn charge_json(q: &Charge4) -> Value {
    Value::Array(q.iter().map(|z| cx(*z)).collect())
}

fn finish(c: &Common, doc: CsvDoc, j: Value) -> CliResult<()> {
    match c.format {
        Format::Csv => emit(&c.out, &doc.into_bytes()),
        Format::Json => emit(&c.out, &json_bytes(&j)?),
    }
}

#[derive(Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1e-8)]
    mu_min: f64,
    #[arg(long, default_value_t = 1e8)]
    mu_max: f64,
    #[arg(long, default_value_t = 400)]
    points_per_decade: usize,
    /// Positive-energy range scanned for exceptional points.
    #[arg(long, default_value_t = 1e-4)]
    lambda_min: f64,
    #[arg(long, default_value_t = 1e4)]
    lambda_max: f64,
    #[arg(long, default_value_t = 200)]
    lambda_points: usize,
}

pub fn spectrum(a: &SpectrumArgs) -> CliResult<()> {
    let c = &a.common;
    let s = setup(c)?;
    let opts = SpectrumOptions {
        mu_min: a.mu_min,
        mu_max: a.mu_max,
        points_per_decade: a.points_per_decade,
        ..SpectrumOptions::default()
    };
    let spec = point_spectrum(&s.alpha, &s.ext, &opts).map_err(numeric)?;
    let res = zero_resonance(&s.alpha, &s.ext);
    let exc = match s.ext.theta(&s.alpha) {
        None => Vec::new(),
        Some(t) => exceptional_points(&s.alpha, &t, a.lambda_min, a.lambda_max, a.lambda_points).map_err(numeric)?,
    };

    let mut doc = CsvDoc::default();
    let rows: Vec<Vec<Cell>> = spec
        .iter()
        .map(|r| vec![r.mu.into(), r.eigenvalue.into(), r.multiplicity.into()])
        .collect();
    doc.section(&["mu".into(), "eigenvalue".into(), "multiplicity".into()], &rows)?;
    if res.dimension() == 0 {
        doc.line("resonances: none");
    } else {
        let mut h = vec!["resonance".to_string()];
        h.extend(charge_columns("q"));
        let rows: Vec<Vec<Cell>> = res
            .charges
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let mut row = vec![Cell::from(i)];
                row.extend(charge_cells(q));
                row
            })
            .collect();
        doc.line(&format!("resonances: {}", res.dimension()));
        doc.section(&h, &rows)?;
    }
    if exc.is_empty() {
        doc.line("exceptional_points: none");
    } else {
        let rows: Vec<Vec<Cell>> = exc
            .iter()
            .map(|p| vec![p.lambda.into(), side_name(p.side).into(), p.sigma_min.into()])
            .collect();
        doc.section(&["lambda".into(), "side".into(), "sigma_min".into()], &rows)?;
    }

    let mut j = header_json(c, &s);
    j["spectrum"] = spec
        .iter()
        .map(|r| {
            json!({
                "mu": r.mu,
                "eigenvalue": r.eigenvalue,
                "multiplicity": r.multiplicity,
                "kernel_basis": r.kernel_basis.iter().map(charge_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    j["resonances"] = json!({
        "dimension": res.dimension(),
        "charges": res.charges.iter().map(charge_json).collect::<Vec<_>>(),
    });
    j["exceptional_points"] = exc
        .iter()
        .map(|p| json!({ "lambda": p.lambda, "side": side_name(p.side), "sigma_min": p.sigma_min }))
        .collect();
    finish(c, doc, j)
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Plus => "plus",
        Side::Minus => "minus",
    }
}

#[derive(Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    common: Common,
    /// Energy lambda = k^2 > 0.
    #[arg(long)]
    energy: f64,
    /// Outgoing directions `start:stop:count` (incidence along omega = 0).
    #[arg(long, default_value = "0:6.283185307179586:361")]
    omega_grid: String,
    /// Directions within this distance of the forward direction are dropped.
    #[arg(long, default_value_t = 1e-3)]
    exclude_forward: f64,
}

pub fn scatter(a: &ScatterArgs) -> CliResult<()> {
    let c = &a.common;
    let s = setup(c)?;
    if !(a.energy > 0.0 && a.energy.is_finite()) {
        return Err(CliError::Config(format!("--energy must be positive, got {}", a.energy)));
    }
    if !(a.exclude_forward >= 0.0) {
        return Err(CliError::Config("--exclude-forward must be non-negative".into()));
    }
    let omegas: Vec<f64> = config::grid(&a.omega_grid)?
        .into_iter()
        .filter(|w| {
            let d = w.rem_euclid(2.0 * PI);
            d.min(2.0 * PI - d) >= a.exclude_forward
        })
        .collect();
    let rows = par_map(c.workers, &omegas, |&w| {
        SPIN_PAIRS
            .iter()
            .map(|&(si, so, _)| scattering_amplitude(&s.alpha, &s.ext, a.energy, w, si, so).map_err(numeric))
            .collect::<CliResult<Vec<_>>>()
    })?;

    let mut h = vec!["omega".to_string()];
    for (_, _, n) in SPIN_PAIRS {
        h.extend(pair(&format!("f_{n}")));
        h.push(format!("dsigma_{n}"));
    }
    let csv_rows: Vec<Vec<Cell>> = omegas
        .iter()
        .zip(&rows)
        .map(|(w, r)| {
            let mut row = vec![Cell::from(*w)];
            for (f, ds) in r {
                row.push((*f).into());
                row.push((*ds).into());
            }
            row
        })
        .collect();
    let mut doc = CsvDoc::default();
    doc.section(&h, &csv_rows)?;

    let mut j = header_json(c, &s);
    j["energy"] = json!(a.energy);
    j["rows"] = omegas
        .iter()
        .zip(&rows)
        .map(|(w, r)| {
            let mut o = json!({ "omega": w });
            for ((_, _, n), (f, ds)) in SPIN_PAIRS.iter().zip(r) {
                o[format!("f_{n}")] = cx(*f);
                o[format!("dsigma_{n}")] = json!(ds);
            }
            o
        })
        .collect();
    finish(c, doc, j)
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FieldKind {
    /// Generalised eigenfunction of the chosen extension.
    Eigenfunction,
    /// Bound state for a negative eigenvalue.
    Bound,
    /// Single layer `G(z) q`.
    SingleLayer,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SpinArg {
    Up,
    Down,
}

impl From<SignArg> for Side {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Side::Plus,
            SignArg::Minus => Side::Minus,
        }
    }
}

impl From<SpinArg> for Spin {
    fn from(s: SpinArg) -> Self {
        match s {
            SpinArg::Up => Spin::Up,
            SpinArg::Down => Spin::Down,
        }
    }
}

#[derive(Args)]
pub struct GridArgs {
    /// Radii `start:stop:count`.
    #[arg(long, default_value = "0.5:3:6")]
    r_grid: String,
    /// Angles `start:stop:count`.
    #[arg(long, default_value = "0:3.141592653589793:3")]
    theta_grid: String,
}

impl GridArgs {
    fn points(&self) -> CliResult<Vec<Polar>> {
        let rs = config::grid(&self.r_grid)?;
        let ts = config::grid(&self.theta_grid)?;
        if rs.iter().any(|r| !(*r >= 0.0)) {
            return Err(CliError::Config("radii must be non-negative".into()));
        }
        Ok(rs.iter().flat_map(|&r| ts.iter().map(move |&t| Polar::new(r, t))).collect())
    }
}

#[derive(Args)]
pub struct EigfunArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = FieldKind::Eigenfunction)]
    kind: FieldKind,
    /// Wave number of the eigenfunction.
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Incidence direction.
    #[arg(long, default_value_t = 0.0)]
    omega: f64,
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    sign: SignArg,
    #[arg(long, value_enum, default_value_t = SpinArg::Up)]
    spin: SpinArg,
    /// Bound state: index of the eigenvalue (ascending mu).
    #[arg(long, default_value_t = 0)]
    bound_index: usize,
    /// Bound state: index of the kernel basis vector.
    #[arg(long, default_value_t = 0)]
    basis: usize,
    /// Single layer: spectral parameter `re,im`.
    #[arg(long, default_value = "-1,0", allow_hyphen_values = true)]
    z: String,
    /// Single layer: charges as a JSON array of four complex entries.
    #[arg(long, default_value = "[1, 0, 0, 0]")]
    charges: String,
}

pub fn eigfun(a: &EigfunArgs) -> CliResult<()> {
    let c = &a.common;
    let s = setup(c)?;
    let points = a.grid.points()?;
    let field: Box<dyn Fn(Polar) -> abpauli::Result<[Complex64; 2]> + Sync> = match a.kind {
        FieldKind::Eigenfunction => {
            if !(a.k > 0.0) {
                return Err(CliError::Config("--k must be positive".into()));
            }
            let (alpha, ext, k, w, sign, spin, tol) = (s.alpha, s.ext, a.k, a.omega, a.sign.into(), a.spin.into(), c.tol);
            Box::new(move |x| theta_eigenfunction(&alpha, &ext, k, w, sign, spin, x, tol))
        }
        FieldKind::Bound => {
            let spec = point_spectrum(&s.alpha, &s.ext, &SpectrumOptions::default()).map_err(numeric)?;
            let rec = spec
                .get(a.bound_index)
                .ok_or_else(|| CliError::Config(format!("--bound-index {}: {} eigenvalues", a.bound_index, spec.len())))?;
            let q = *rec
                .kernel_basis
                .get(a.basis)
                .ok_or_else(|| CliError::Config(format!("--basis {}: multiplicity {}", a.basis, rec.multiplicity)))?;
            let (alpha, ext, mu) = (s.alpha, s.ext, rec.mu);
            Box::new(move |x| bound_state(&alpha, &ext, mu, &q, x))
        }
        FieldKind::SingleLayer => {
            let z = SpectralPoint::new(config::complex(&a.z)?).map_err(config::as_config)?;
            let q = config::charges(&a.charges)?;
            let alpha = s.alpha;
            Box::new(move |x| single_layer(&alpha, &z, &q, x))
        }
    };
    let values = par_map(c.workers, &points, |&x| field(x).map_err(numeric))?;

    let mut h = vec!["r".to_string(), "theta".to_string()];
    h.extend(pair("psi_up"));
    h.extend(pair("psi_down"));
    let rows: Vec<Vec<Cell>> = points
        .iter()
        .zip(&values)
        .map(|(x, v)| vec![x.r.into(), x.theta.into(), v[0].into(), v[1].into()])
        .collect();
    let mut doc = CsvDoc::default();
    doc.section(&h, &rows)?;
    let mut j = header_json(c, &s);
    j["points"] = points
        .iter()
        .zip(&values)
        .map(|(x, v)| json!({ "r": x.r, "theta": x.theta, "psi_up": cx(v[0]), "psi_down": cx(v[1]) }))
        .collect();
    finish(c, doc, j)
}

#[derive(Args)]
pub struct KernelArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    grid: GridArgs,
    /// Spectral parameter `re,im` off `[0, inf)`.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Source point `r,theta`.
    #[arg(long, default_value = "1,0")]
    y: String,
}

pub fn kernel(a: &KernelArgs) -> CliResult<()> {
    let c = &a.common;
    let s = setup(c)?;
    let z = SpectralPoint::new(config::complex(&a.z)?).map_err(config::as_config)?;
    let y = match config::list(&a.y)?.as_slice() {
        [r, t] if *r >= 0.0 => Polar::new(*r, *t),
        _ => return Err(CliError::Config(format!("--y '{}': expected r,theta with r >= 0", a.y))),
    };
    let points = a.grid.points()?;
    let blocks = par_map(c.workers, &points, |&x| krein_kernel(&s.alpha, &s.ext, &z, x, y, c.tol).map_err(numeric))?;
    let names = ["uu", "ud", "du", "dd"];
    let mut h = vec!["r".to_string(), "theta".to_string()];
    for n in names {
        h.extend(pair(&format!("k_{n}")));
    }
    let rows: Vec<Vec<Cell>> = points
        .iter()
        .zip(&blocks)
        .map(|(x, b)| vec![x.r.into(), x.theta.into(), b[0][0].into(), b[0][1].into(), b[1][0].into(), b[1][1].into()])
        .collect();
    let mut doc = CsvDoc::default();
    doc.section(&h, &rows)?;
    let mut j = header_json(c, &s);
    j["z"] = cx(z.z());
    j["y"] = json!({ "r": y.r, "theta": y.theta });
    j["points"] = points
        .iter()
        .zip(&blocks)
        .map(|(x, b)| {
            let mut o = json!({ "r": x.r, "theta": x.theta });
            for (n, v) in names.iter().zip([b[0][0], b[0][1], b[1][0], b[1][1]]) {
                o[format!("k_{n}")] = cx(v);
            }
            o
        })
        .collect();
    finish(c, doc, j)
}

#[derive(Args)]
pub struct SymcheckArgs {
    /// Spin matrix S as JSON rows; entries are numbers, [re, im] or {"re", "im"}.
    #[arg(long)]
    s: String,
    /// Orthogonal plane transformation T as JSON rows.
    #[arg(long)]
    t: String,
    /// Treat the transformation as anti-linear.
    #[arg(long)]
    antilinear: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn class_name(c: &Option<SymmetryClass>) -> String {
    match c {
        None => String::new(),
        Some(SymmetryClass::Axial) => "axial".into(),
        Some(SymmetryClass::Transverse) => "transverse".into(),
        Some(SymmetryClass::Corotation { varsigma }) => format!("corotation(varsigma={varsigma})"),
        Some(SymmetryClass::Reflection { varsigma }) => format!("reflection(varsigma={varsigma})"),
        Some(SymmetryClass::AntiRotation { eta }) => format!("anti-rotation(eta={eta})"),
        Some(SymmetryClass::AntiReflection { varsigma }) => format!("anti-reflection(varsigma={varsigma})"),
    }
}

fn verdict_json(form: &str, v: &SymmetryVerdict) -> Value {
    json!({
        "form": form,
        "admissible": v.admissible,
        "antilinear": v.antilinear,
        "potential_sign": v.potential_sign,
        "field_sign": v.field_sign,
        "class": class_name(&v.class),
        "listed": v.listed,
        "residual": v.residual,
        "reason": v.reason,
    })
}

pub fn symcheck(a: &SymcheckArgs) -> CliResult<()> {
    let s = SpinMatrix::from_rows(config::matrix2(&a.s)?);
    let t = PlaneTransform::from_rows(config::real_matrix2(&config::matrix2(&a.t)?)?);
    let p = classify_pauli(&s, &t, a.antilinear).map_err(config::as_config)?;
    let d = classify_dirac(&s, &t, a.antilinear).map_err(config::as_config)?;
    let h: Vec<String> = ["form", "admissible", "antilinear", "potential_sign", "field_sign", "class", "listed", "residual", "reason"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let row = |form: &str, v: &SymmetryVerdict| {
        vec![
            Cell::from(form),
            v.admissible.into(),
            v.antilinear.into(),
            Cell::Int(v.potential_sign.into()),
            Cell::Int(v.field_sign.into()),
            Cell::Text(class_name(&v.class)),
            v.listed.into(),
            v.residual.into(),
            Cell::Text(v.reason.clone().unwrap_or_default()),
        ]
    };
    let mut doc = CsvDoc::default();
    doc.section(&h, &[row("pauli", &p), row("dirac", &d)])?;
    match a.format {
        Format::Csv => emit(&a.out, &doc.into_bytes()),
        Format::Json => emit(&a.out, &json_bytes(&json!([verdict_json("pauli", &p), verdict_json("dirac", &d)]))?),
    }
}

#[derive(Args)]
pub struct DiracArgs {
    #[command(flatten)]
    common: Common,
    /// Boundary parameters, comma-separated.
    #[arg(long, default_value = "0")]
    gamma: String,
}

pub fn dirac(a: &DiracArgs) -> CliResult<()> {
    let c = &a.common;
    let s = setup(c)?;
    let gammas = config::list(&a.gamma)?;
    let mut square_rows = Vec::new();
    let mut trace_rows = Vec::new();
    let mut jg = Vec::new();
    for &g in &gammas {
        let sc = dirac_square_charges(&s.alpha, g).map_err(numeric)?;
        let spinor = DiracSpinor::gamma_family(Complex64::new(1.0, 0.0), g);
        let member = dirac_membership(&s.alpha, g, &spinor).map_err(numeric)?;
        let ct = sc.cot_tan_determinant;
        let mut row = vec![Cell::from(g), sc.determinant.into()];
        match ct {
            Some(v) => row.push(v.into()),
            None => {
                row.push("".into());
                row.push("".into());
            }
        }
        row.extend([sc.null_dimension.into(), sc.only_trivial().into(), member.into()]);
        square_rows.push(row);
        let mut traces = Vec::new();
        for k in TraceKind::ALL {
            let exact = dirac_traces(&s.alpha, &spinor, k).map_err(numeric)?;
            let num = dirac_traces_numeric(&s.alpha, &spinor, k).map_err(numeric)?;
            trace_rows.push(vec![Cell::from(g), k.name().into(), exact.into(), num.into()]);
            traces.push(json!({ "kind": k.name(), "closed_form": cx(exact), "numeric": cx(num) }));
        }
        jg.push(json!({
            "gamma": g,
            "determinant": cx(sc.determinant),
            "cot_tan_determinant": ct.map(cx),
            "null_dimension": sc.null_dimension,
            "only_trivial": sc.only_trivial(),
            "gamma_family_member": member,
            "traces": traces,
        }));
    }
    let mut h = vec!["gamma".to_string()];
    h.extend(pair("determinant"));
    h.extend(pair("cot_tan_determinant"));
    h.extend(["null_dimension", "only_trivial", "gamma_family_member"].map(String::from));
    let mut doc = CsvDoc::default();
    doc.section(&h, &square_rows)?;
    let mut th = vec!["gamma".to_string(), "trace".to_string()];
    th.extend(pair("closed_form"));
    th.extend(pair("numeric"));
    doc.section(&th, &trace_rows)?;
    let mut j = header_json(c, &s);
    j["dirac"] = Value::Array(jg);
    finish(c, doc, j)
}

