//! Scenario runner: reproducible experiments writing root tables, series and
//! a manifest into an output directory.

use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use ssa_roots_core::asymptotics::{classify_roots, normalize_weight};
use ssa_roots_core::minnorm::{estimate_signal_roots, extraneous_poly};
use ssa_roots_core::poly::ComplexPoly;
use ssa_roots_core::rng::SplitMix64;
use ssa_roots_core::separability::{check_left_separable, check_two_sided, separable_family};
use ssa_roots_core::series::{RealTerm, SignalModel, TimeSeries};
use ssa_roots_core::trajectory::vandermonde_basis;
use ssa_roots_core::Complex64;

use crate::formats::{self, FormatError, ModelFile, RootKind, RootRow, RootSide};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    SepConstant,
    SepExponent,
    SepConjugate,
    Extsam,
    Noised,
    Mult,
    Custom,
}

/// One window length or a list of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WindowSpec {
    One(usize),
    Many(Vec<usize>),
}

impl WindowSpec {
    pub fn to_vec(&self) -> Vec<usize> {
        match self {
            WindowSpec::One(l) => vec![*l],
            WindowSpec::Many(ls) => ls.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelFile>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub windows: Option<WindowSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace_dim: Option<usize>,
    #[serde(default)]
    pub noise_std: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub output_dir: PathBuf,
}

#[derive(Debug)]
pub enum ScenarioError {
    /// Invalid configuration; carries a field-level message.
    Config(String),
    /// A numerical routine failed.
    Numerical(ssa_roots_core::Error),
    Format(FormatError),
}

impl std::fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScenarioError::Config(msg) => write!(f, "config error: {msg}"),
            ScenarioError::Numerical(e) => write!(f, "numerical failure: {e}"),
            ScenarioError::Format(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

impl From<ssa_roots_core::Error> for ScenarioError {
    fn from(e: ssa_roots_core::Error) -> Self {
        ScenarioError::Numerical(e)
    }
}

impl From<FormatError> for ScenarioError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Model(inner) => ScenarioError::Numerical(inner),
            other => ScenarioError::Format(other),
        }
    }
}

impl From<std::io::Error> for ScenarioError {
    fn from(e: std::io::Error) -> Self {
        ScenarioError::Format(FormatError::Io(e))
    }
}

/// Files written by a run plus the manifest content.
#[derive(Debug)]
pub struct ExperimentReport {
    pub files: Vec<PathBuf>,
    pub manifest: serde_json::Value,
}

/// The two-cosine decaying model used by the root-classification figures:
/// `0.9^n (cos(2 pi n / 8) + cos(2 pi sin(0.25) n))`.
pub fn two_cosine_model() -> SignalModel {
    ssa_roots_core::series::real_to_complex(&[
        RealTerm {
            rho: 0.9,
            omega: 0.125,
            phi: 0.0,
            poly: vec![1.0],
        },
        RealTerm {
            rho: 0.9,
            omega: (0.25f64).sin(),
            phi: 0.0,
            poly: vec![1.0],
        },
    ])
    .expect("valid model")
}

/// The noisy-estimation model `1.05^n + 0.1 * 1.1^n cos(0.5 n)`.
pub fn growing_cosine_model() -> SignalModel {
    ssa_roots_core::series::real_to_complex(&[
        RealTerm {
            rho: 1.05,
            omega: 0.0,
            phi: 0.0,
            poly: vec![1.0],
        },
        RealTerm {
            rho: 1.1,
            omega: 0.5 / std::f64::consts::TAU,
            phi: 0.0,
            poly: vec![0.1],
        },
    ])
    .expect("valid model")
}

/// The multiplicity-three model `n^2 * 0.8^n`.
pub fn quadratic_decay_model() -> SignalModel {
    SignalModel::new(vec![ssa_roots_core::series::ModelTerm {
        root: Complex64::new(0.8, 0.0),
        poly: ComplexPoly::from_coeffs(vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]),
    }])
    .expect("valid model")
}

/// Adds seeded real Gaussian noise to a real-valued series.
pub fn add_noise(series: &TimeSeries, noise_std: f64, seed: u64) -> TimeSeries {
    let mut rng = SplitMix64::new(seed);
    let samples = series
        .samples()
        .iter()
        .map(|s| Complex64::new(s.re + noise_std * rng.normal(), s.im))
        .collect();
    TimeSeries::new(samples).expect("nonempty")
}

/// Exact root table of a model at one window: signal roots from the model,
/// extraneous roots from the orthogonal-family polynomial.
pub fn exact_root_rows(
    model: &SignalModel,
    window: usize,
    side: RootSide,
) -> Result<Vec<RootRow>, ScenarioError> {
    let p = match side {
        RootSide::Forward => model.char_poly(),
        RootSide::Backward => {
            let c = model.char_poly();
            let coeffs: Vec<Complex64> = c.coeffs().iter().rev().copied().collect();
            ComplexPoly::from_coeffs(coeffs).monic()?
        }
    };
    let d = model.difference_dimension();
    if window <= d {
        return Err(ScenarioError::Config(format!(
            "L: window {window} must exceed the model dimension {d}"
        )));
    }
    let mut rows = Vec::new();
    for cl in signal_roots_for_side(model, side) {
        for _ in 0..cl.1 {
            rows.push(RootRow {
                value: cl.0,
                kind: RootKind::Signal,
                side,
                window: Some(window),
            });
        }
    }
    let h = extraneous_poly(&p, window - d - 1)?;
    let mut ext = if h.n == 0 { Vec::new() } else { h.roots()? };
    ext.sort_by(|a, b| {
        a.arg()
            .partial_cmp(&b.arg())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for z in ext {
        rows.push(RootRow {
            value: z,
            kind: RootKind::Extraneous,
            side,
            window: Some(window),
        });
    }
    Ok(rows)
}

fn signal_roots_for_side(model: &SignalModel, side: RootSide) -> Vec<(Complex64, usize)> {
    model
        .root_clusters()
        .into_iter()
        .map(|c| {
            let v = match side {
                RootSide::Forward => c.value,
                RootSide::Backward => c.value.finv(),
            };
            (v, c.multiplicity)
        })
        .collect()
}

/// Estimated root table of a noisy series (forward side).
pub fn estimated_root_rows(
    series: &TimeSeries,
    window: usize,
    dim: usize,
) -> Result<Vec<RootRow>, ScenarioError> {
    let est = estimate_signal_roots(series, window, dim)?;
    let mut rows = Vec::new();
    for cl in &est.signal {
        for _ in 0..cl.multiplicity {
            rows.push(RootRow {
                value: cl.value,
                kind: RootKind::Signal,
                side: RootSide::Forward,
                window: Some(window),
            });
        }
    }
    let mut ext = est.extraneous.clone();
    ext.sort_by(|a, b| {
        a.arg()
            .partial_cmp(&b.arg())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for z in ext {
        rows.push(RootRow {
            value: z,
            kind: RootKind::Extraneous,
            side: RootSide::Forward,
            window: Some(window),
        });
    }
    Ok(rows)
}

fn thread_cap() -> usize {
    std::env::var("SSA_ROOTS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs per-window tasks on up to `SSA_ROOTS_THREADS` workers; each task
/// writes only its own file, results are collected in input order.
fn run_window_tasks<T, F>(windows: &[usize], task: F) -> Result<Vec<T>, ScenarioError>
where
    T: Send,
    F: Fn(usize) -> Result<T, ScenarioError> + Sync,
{
    let workers = thread_cap().min(windows.len()).max(1);
    let results: Mutex<Vec<Option<Result<T, ScenarioError>>>> =
        Mutex::new((0..windows.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for w in 0..workers {
            let results = &results;
            let task = &task;
            scope.spawn(move || {
                for (i, &window) in windows.iter().enumerate() {
                    if i % workers != w {
                        continue;
                    }
                    let out = task(window);
                    results.lock().unwrap()[i] = Some(out);
                }
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("task ran"))
        .collect()
}

struct RunContext {
    cfg: ScenarioConfig,
    defaults: serde_json::Map<String, serde_json::Value>,
    files: Vec<PathBuf>,
}

impl RunContext {
    fn default_len(&mut self, fallback: usize) -> usize {
        match self.cfg.len {
            Some(n) => n,
            None => {
                self.defaults.insert("N".into(), fallback.into());
                fallback
            }
        }
    }

    fn default_windows(&mut self, fallback: &[usize]) -> Vec<usize> {
        match &self.cfg.windows {
            Some(w) => w.to_vec(),
            None => {
                self.defaults.insert("L".into(), fallback.into());
                fallback.to_vec()
            }
        }
    }

    fn default_dim(&mut self, fallback: usize) -> usize {
        match self.cfg.subspace_dim {
            Some(d) => d,
            None => {
                self.defaults.insert("subspace_dim".into(), fallback.into());
                fallback
            }
        }
    }

    fn default_noise(&mut self, fallback: f64) -> f64 {
        if self.cfg.noise_std > 0.0 {
            self.cfg.noise_std
        } else {
            self.defaults.insert("noise_std".into(), fallback.into());
            fallback
        }
    }

    fn out(&mut self, name: &str) -> PathBuf {
        let p = self.cfg.output_dir.join(name);
        self.files.push(p.clone());
        p
    }
}

/// FNV-1a 64-bit hash, used to fingerprint the configuration in the manifest.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ExperimentReport, ScenarioError> {
    validate(cfg)?;
    fs::create_dir_all(&cfg.output_dir)?;
    let mut ctx = RunContext {
        cfg: cfg.clone(),
        defaults: serde_json::Map::new(),
        files: Vec::new(),
    };
    match cfg.scenario {
        ScenarioKind::Extsam => run_extsam(&mut ctx)?,
        ScenarioKind::Noised => run_noised(&mut ctx)?,
        ScenarioKind::Mult => run_mult(&mut ctx)?,
        ScenarioKind::SepConstant => run_separability_demo(&mut ctx, DemoKind::Constant)?,
        ScenarioKind::SepExponent => run_separability_demo(&mut ctx, DemoKind::Exponent)?,
        ScenarioKind::SepConjugate => run_separability_demo(&mut ctx, DemoKind::Conjugate)?,
        ScenarioKind::Custom => run_custom(&mut ctx)?,
    }

    let config_echo = serde_json::to_value(cfg).map_err(FormatError::from)?;
    let canonical = serde_json::to_string(&config_echo).map_err(FormatError::from)?;
    let manifest = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": config_echo,
        "config_hash": format!("fnv1a64:{:016x}", fnv1a64(canonical.as_bytes())),
        "defaults_applied": serde_json::Value::Object(ctx.defaults.clone()),
        "files": ctx.files.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect::<Vec<_>>(),
    });
    // The manifest is written once, after all tasks have completed.
    let manifest_path = cfg.output_dir.join("manifest.json");
    fs::write(
        &manifest_path,
        serde_json::to_string_pretty(&manifest).map_err(FormatError::from)?,
    )?;
    let mut files = ctx.files;
    files.push(manifest_path);
    Ok(ExperimentReport { files, manifest })
}

fn validate(cfg: &ScenarioConfig) -> Result<(), ScenarioError> {
    if cfg.noise_std > 0.0 && cfg.seed.is_none() {
        return Err(ScenarioError::Config(
            "seed: required when noise_std > 0".into(),
        ));
    }
    if cfg.noise_std < 0.0 {
        return Err(ScenarioError::Config(
            "noise_std: must be nonnegative".into(),
        ));
    }
    if let (Some(n), Some(w)) = (cfg.len, &cfg.windows) {
        for l in w.to_vec() {
            if n < 2 * l {
                return Err(ScenarioError::Config(format!(
                    "N: series length {n} must be at least 2L = {} for window {l}",
                    2 * l
                )));
            }
        }
    }
    if cfg.scenario == ScenarioKind::Custom && cfg.model.is_none() {
        return Err(ScenarioError::Config(
            "model: required for the custom scenario".into(),
        ));
    }
    Ok(())
}

fn run_extsam(ctx: &mut RunContext) -> Result<(), ScenarioError> {
    let model = two_cosine_model();
    let windows = ctx.default_windows(&[20, 30, 50]);
    let len = ctx.default_len(2 * windows.iter().copied().max().unwrap_or(50) + 20);
    let series = model.generate(len);
    formats::write_series(&ctx.out("series.csv"), &series)?;

    let weight = normalize_weight(&model.char_poly(), None)?;
    let results = run_window_tasks(&windows, |window| {
        let rows = exact_root_rows(&model, window, RootSide::Forward)?;
        let ext: Vec<Complex64> = rows
            .iter()
            .filter(|r| r.kind == RootKind::Extraneous)
            .map(|r| r.value)
            .collect();
        let diag = classify_roots(&ext, &weight, weight.default_delta());
        let path = ctx.cfg.output_dir.join(format!("roots_L{window}.csv"));
        fs::write(&path, formats::roots_to_csv(&rows))?;
        Ok((window, diag.spurious.len(), diag.general.len()))
    })?;
    for &window in &windows {
        ctx.files
            .push(ctx.cfg.output_dir.join(format!("roots_L{window}.csv")));
    }
    let mut summary = String::from("L,rho,delta,spurious,general\n");
    for (window, spurious, general) in results {
        summary.push_str(&format!(
            "{window},{},{},{spurious},{general}\n",
            weight.rho,
            weight.default_delta()
        ));
    }
    fs::write(ctx.out("summary.csv"), summary)?;
    Ok(())
}

fn run_noised(ctx: &mut RunContext) -> Result<(), ScenarioError> {
    let model = growing_cosine_model();
    let len = ctx.default_len(300);
    let window = ctx
        .default_windows(&[((len as f64) / 3.0).round() as usize])
        .into_iter()
        .next()
        .unwrap();
    let dim = ctx.default_dim(3);
    let noise_std = ctx.default_noise(50.0);
    let seed = ctx.cfg.seed.unwrap_or(0);
    let clean = model.generate(len);
    let noisy = add_noise(&clean, noise_std, seed);
    formats::write_series(&ctx.out("series.csv"), &noisy)?;
    let rows = estimated_root_rows(&noisy, window, dim)?;
    fs::write(ctx.out("roots.csv"), formats::roots_to_csv(&rows))?;
    Ok(())
}

fn run_mult(ctx: &mut RunContext) -> Result<(), ScenarioError> {
    let model = quadratic_decay_model();
    let len = ctx.default_len(150);
    let window = ctx
        .default_windows(&[((len as f64) / 3.0).round() as usize])
        .into_iter()
        .next()
        .unwrap();
    let dim = ctx.default_dim(3);
    let clean = model.generate(len);

    let rows_exact = exact_root_rows(&model, window, RootSide::Forward)?;
    fs::write(
        ctx.out("roots_noisefree.csv"),
        formats::roots_to_csv(&rows_exact),
    )?;

    if ctx.cfg.noise_std > 0.0 {
        let seed = ctx.cfg.seed.unwrap_or(0);
        let noisy = add_noise(&clean, ctx.cfg.noise_std, seed);
        formats::write_series(&ctx.out("series_noisy.csv"), &noisy)?;
        let rows_noisy = estimated_root_rows(&noisy, window, dim)?;
        fs::write(
            ctx.out("roots_noisy.csv"),
            formats::roots_to_csv(&rows_noisy),
        )?;
    } else {
        formats::write_series(&ctx.out("series.csv"), &clean)?;
    }
    Ok(())
}

enum DemoKind {
    Constant,
    Exponent,
    Conjugate,
}

/// Separability demonstrations: the admissible-root family of a reference
/// series and a verdict for a canonical partner drawn from it.
fn run_separability_demo(ctx: &mut RunContext, kind: DemoKind) -> Result<(), ScenarioError> {
    let window = ctx.default_windows(&[8]).into_iter().next().unwrap();
    let len = ctx.default_len(3 * window);
    let model = match kind {
        DemoKind::Constant => {
            SignalModel::exponential(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))?
        }
        DemoKind::Exponent => {
            SignalModel::exponential(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0))?
        }
        DemoKind::Conjugate => {
            // rho e^{2 pi i m / (2L)} with m = 3: an admissible cosine root.
            let root =
                Complex64::from_polar(1.0, std::f64::consts::TAU * 3.0 / (2.0 * window as f64));
            ssa_roots_core::series::SignalModel::new(vec![
                ssa_roots_core::series::ModelTerm {
                    root,
                    poly: ComplexPoly::constant(Complex64::new(0.5, 0.0)),
                },
                ssa_roots_core::series::ModelTerm {
                    root: root.conj(),
                    poly: ComplexPoly::constant(Complex64::new(0.5, 0.0)),
                },
            ])?
        }
    };
    let basis = vandermonde_basis(&model, window)?;
    let family = separable_family(&basis, None)?;
    let mut family_csv = String::from("re,im,multiplicity\n");
    let mut admissible = family.admissible_roots.clone();
    admissible.sort_by(|a, b| {
        a.value
            .arg()
            .partial_cmp(&b.value.arg())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for cl in &admissible {
        family_csv.push_str(&format!(
            "{},{},{}\n",
            cl.value.re, cl.value.im, cl.multiplicity
        ));
    }
    fs::write(ctx.out("family.csv"), family_csv)?;

    // Canonical partner: a single-root model on the first admissible root.
    let partner = admissible
        .first()
        .map(|cl| SignalModel::exponential(cl.value, Complex64::new(1.0, 0.0)))
        .transpose()?;
    let verdict_json = match partner {
        Some(partner) => {
            let left = check_left_separable(&model, &partner, window);
            let two = check_two_sided(&model, &partner, window, len)?;
            let numeric = ssa_roots_core::separability::numeric_separability(
                &model.generate(len),
                &partner.generate(len),
                window,
            )?;
            serde_json::json!({
                "partner_root": [admissible[0].value.re, admissible[0].value.im],
                "left": verdict_to_json(&left),
                "two_sided": verdict_to_json(&two),
                "numeric_left": numeric,
            })
        }
        None => serde_json::json!({ "partner_root": null }),
    };
    fs::write(
        ctx.out("verdict.json"),
        serde_json::to_string_pretty(&verdict_json).map_err(FormatError::from)?,
    )?;
    Ok(())
}

pub fn verdict_to_json(v: &ssa_roots_core::separability::SeparabilityVerdict) -> serde_json::Value {
    let side = match v.side {
        ssa_roots_core::separability::Side::Left => "left",
        ssa_roots_core::separability::Side::Right => "right",
        ssa_roots_core::separability::Side::TwoSided => "two_sided",
    };
    let reason = match v.reason {
        ssa_roots_core::separability::SeparabilityReason::Ok => "ok",
        ssa_roots_core::separability::SeparabilityReason::RootFormViolation => {
            "root-form-violation"
        }
        ssa_roots_core::separability::SeparabilityReason::MultipleRoot => "multiple-root",
        ssa_roots_core::separability::SeparabilityReason::BorderCase => "border-case",
    };
    let witness = v.witness.as_ref().map(|w| {
        serde_json::json!({
            "rho": w.rho,
            "omega": w.omega,
            "m_indices": w.m_indices,
            "n_indices": w.n_indices,
            "real_special": w.real_special,
        })
    });
    serde_json::json!({
        "separable": v.separable,
        "side": side,
        "reason": reason,
        "witness": witness,
        "border_disagreement": v.border_disagreement,
    })
}

fn run_custom(ctx: &mut RunContext) -> Result<(), ScenarioError> {
    let model = ctx
        .cfg
        .model
        .clone()
        .ok_or_else(|| ScenarioError::Config("model: required".into()))?
        .into_model()?;
    let d = model.difference_dimension();
    let windows = ctx.default_windows(&[2 * d + 2]);
    fs::write(
        ctx.out("char_poly.json"),
        serde_json::to_string_pretty(&formats::poly_to_json(&model.char_poly()))
            .map_err(FormatError::from)?,
    )?;
    if let Some(len) = ctx.cfg.len {
        let series = model.generate(len);
        formats::write_series(&ctx.out("series.csv"), &series)?;
    }
    run_window_tasks(&windows, |window| {
        let rows = exact_root_rows(&model, window, RootSide::Forward)?;
        let path = ctx.cfg.output_dir.join(format!("roots_L{window}.csv"));
        fs::write(&path, formats::roots_to_csv(&rows))?;
        Ok(())
    })?;
    for &window in &windows {
        ctx.files
            .push(ctx.cfg.output_dir.join(format!("roots_L{window}.csv")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temp_dir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("ssa_roots_test_{tag}_{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn extsam_runs_and_is_deterministic() {
        let dir = temp_dir("extsam");
        let cfg = ScenarioConfig {
            scenario: ScenarioKind::Extsam,
            model: None,
            len: None,
            windows: Some(WindowSpec::Many(vec![20, 30])),
            subspace_dim: None,
            noise_std: 0.0,
            seed: None,
            output_dir: dir.clone(),
        };
        let r1 = run_scenario(&cfg).unwrap();
        let contents1: Vec<Vec<u8>> = r1.files.iter().map(|p| fs::read(p).unwrap()).collect();
        let r2 = run_scenario(&cfg).unwrap();
        for (p, c1) in r2.files.iter().zip(contents1) {
            assert_eq!(fs::read(p).unwrap(), c1, "file {p:?} not reproducible");
        }
        assert!(dir.join("manifest.json").exists());
        let _ = fs::remove_dir_all(&dir);
    }

    #[test]
    fn noise_requires_seed() {
        let cfg = ScenarioConfig {
            scenario: ScenarioKind::Noised,
            model: None,
            len: None,
            windows: None,
            subspace_dim: None,
            noise_std: 50.0,
            seed: None,
            output_dir: temp_dir("noseed"),
        };
        match run_scenario(&cfg) {
            Err(ScenarioError::Config(msg)) => assert!(msg.starts_with("seed")),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn window_bound_is_validated() {
        let cfg = ScenarioConfig {
            scenario: ScenarioKind::Extsam,
            model: None,
            len: Some(30),
            windows: Some(WindowSpec::One(20)),
            subspace_dim: None,
            noise_std: 0.0,
            seed: None,
            output_dir: temp_dir("bounds"),
        };
        assert!(matches!(run_scenario(&cfg), Err(ScenarioError::Config(_))));
    }

    #[test]
    fn noised_noise_is_real_and_seeded() {
        let clean = growing_cosine_model().generate(50);
        let a = add_noise(&clean, 5.0, 7);
        let b = add_noise(&clean, 5.0, 7);
        let c = add_noise(&clean, 5.0, 8);
        assert_eq!(a.samples(), b.samples());
        assert_ne!(a.samples(), c.samples());
        assert!(a.samples().iter().all(|z| z.im == 0.0));
    }
}
