//! File formats: signal models as JSON, series and root tables as CSV.
//!
//! A model file carries either complex `terms` (each a root `[re, im]` with
//! ascending polynomial coefficients `[[re, im], ...]`) or `real_terms`
//! (modulated cosines `poly(n) * rho^n * cos(2 pi omega n + phi)`), which are
//! converted to the complex form on load.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use ssa_roots_core::poly::ComplexPoly;
use ssa_roots_core::series::{real_to_complex, ModelTerm, RealTerm, SignalModel, TimeSeries};
use ssa_roots_core::Complex64;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub real_terms: Vec<RealTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub root: [f64; 2],
    pub poly: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealTermJson {
    pub rho: f64,
    pub omega: f64,
    #[serde(default)]
    pub phi: f64,
    pub poly: Vec<f64>,
}

#[derive(Debug)]
pub enum FormatError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Csv(String),
    Model(ssa_roots_core::Error),
}

impl std::fmt::Display for FormatError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "io error: {e}"),
            FormatError::Json(e) => write!(f, "json error: {e}"),
            FormatError::Csv(msg) => write!(f, "csv error: {msg}"),
            FormatError::Model(e) => write!(f, "model error: {e}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<std::io::Error> for FormatError {
    fn from(e: std::io::Error) -> Self {
        FormatError::Io(e)
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

impl From<ssa_roots_core::Error> for FormatError {
    fn from(e: ssa_roots_core::Error) -> Self {
        FormatError::Model(e)
    }
}

impl ModelFile {
    pub fn from_model(model: &SignalModel) -> Self {
        Self {
            terms: model
                .terms()
                .iter()
                .map(|t| TermJson {
                    root: [t.root.re, t.root.im],
                    poly: t.poly.coeffs().iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
            real_terms: Vec::new(),
        }
    }

    pub fn into_model(self) -> Result<SignalModel, FormatError> {
        if !self.real_terms.is_empty() {
            let terms: Vec<RealTerm> = self
                .real_terms
                .iter()
                .map(|t| RealTerm {
                    rho: t.rho,
                    omega: t.omega,
                    phi: t.phi,
                    poly: t.poly.clone(),
                })
                .collect();
            let mut model = real_to_complex(&terms)?;
            if !self.terms.is_empty() {
                let mut all: Vec<ModelTerm> = model.terms().to_vec();
                all.extend(complex_terms(&self.terms));
                model = SignalModel::new(all)?;
            }
            return Ok(model);
        }
        Ok(SignalModel::new(complex_terms(&self.terms))?)
    }
}

fn complex_terms(terms: &[TermJson]) -> Vec<ModelTerm> {
    terms
        .iter()
        .map(|t| ModelTerm {
            root: Complex64::new(t.root[0], t.root[1]),
            poly: ComplexPoly::from_coeffs(
                t.poly.iter().map(|c| Complex64::new(c[0], c[1])).collect(),
            ),
        })
        .collect()
}

pub fn read_model(path: &Path) -> Result<SignalModel, FormatError> {
    let text = fs::read_to_string(path)?;
    let file: ModelFile = serde_json::from_str(&text)?;
    file.into_model()
}

pub fn write_model(path: &Path, model: &SignalModel) -> Result<(), FormatError> {
    let file = ModelFile::from_model(model);
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Polynomial as a JSON array of `[re, im]` pairs, ascending degree.
pub fn poly_to_json(p: &ComplexPoly) -> serde_json::Value {
    serde_json::json!(p.coeffs().iter().map(|c| [c.re, c.im]).collect::<Vec<_>>())
}

/// Normalizes negative zero so CSV cells never read `-0`.
fn unsign_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Series CSV with header `n,re,im`.
pub fn series_to_csv(series: &TimeSeries) -> String {
    let mut out = String::from("n,re,im\n");
    for (n, s) in series.samples().iter().enumerate() {
        let _ = writeln!(out, "{n},{},{}", unsign_zero(s.re), unsign_zero(s.im));
    }
    out
}

pub fn write_series(path: &Path, series: &TimeSeries) -> Result<(), FormatError> {
    fs::write(path, series_to_csv(series))?;
    Ok(())
}

pub fn read_series(path: &Path) -> Result<TimeSeries, FormatError> {
    let text = fs::read_to_string(path)?;
    parse_series_csv(&text)
}

pub fn parse_series_csv(text: &str) -> Result<TimeSeries, FormatError> {
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.starts_with('n')) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 2 {
            return Err(FormatError::Csv(format!(
                "line {}: expected n,re[,im]",
                i + 1
            )));
        }
        let re: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|e| FormatError::Csv(format!("line {}: {e}", i + 1)))?;
        let im: f64 = if fields.len() > 2 {
            fields[2]
                .trim()
                .parse()
                .map_err(|e| FormatError::Csv(format!("line {}: {e}", i + 1)))?
        } else {
            0.0
        };
        samples.push(Complex64::new(re, im));
    }
    Ok(TimeSeries::new(samples)?)
}

/// One row of a root table.
#[derive(Debug, Clone)]
pub struct RootRow {
    pub value: Complex64,
    pub kind: RootKind,
    pub side: RootSide,
    /// Window length; only emitted by scenario outputs.
    pub window: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    Signal,
    Extraneous,
}

impl RootKind {
    fn as_str(self) -> &'static str {
        match self {
            RootKind::Signal => "signal",
            RootKind::Extraneous => "extraneous",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSide {
    Forward,
    Backward,
}

impl RootSide {
    fn as_str(self) -> &'static str {
        match self {
            RootSide::Forward => "forward",
            RootSide::Backward => "backward",
        }
    }
}

/// Root table CSV: `re,im,kind,side` plus an `L` column when any row
/// carries a window.
pub fn roots_to_csv(rows: &[RootRow]) -> String {
    let with_window = rows.iter().any(|r| r.window.is_some());
    let mut out = String::new();
    out.push_str(if with_window {
        "re,im,kind,side,L\n"
    } else {
        "re,im,kind,side\n"
    });
    for r in rows {
        let _ = write!(
            out,
            "{},{},{},{}",
            unsign_zero(r.value.re),
            unsign_zero(r.value.im),
            r.kind.as_str(),
            r.side.as_str()
        );
        if with_window {
            let _ = write!(out, ",{}", r.window.map_or(0, |w| w));
        }
        out.push('\n');
    }
    out
}

pub fn write_roots(path: &Path, rows: &[RootRow]) -> Result<(), FormatError> {
    fs::write(path, roots_to_csv(rows))?;
    Ok(())
}

/// Singular values as CSV with header `index,sigma`.
pub fn singular_values_to_csv(sigma: &[f64]) -> String {
    let mut out = String::from("index,sigma\n");
    for (i, s) in sigma.iter().enumerate() {
        let _ = writeln!(out, "{i},{s}");
    }
    out
}
