//! Time series governed by linear recursions: signal models as sums of
//! polynomially modulated exponentials, generation, recursion extraction and
//! continuation in both directions.

use alloc::{vec, vec::Vec};
use num_complex::Complex64;
// f64 math comes from num-traits (libm) when no std is in the crate graph;
// builds that do link std resolve the methods inherently instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::poly::{ComplexPoly, RootCluster};

/// One term `P(n) * lambda^n` of a signal model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelTerm {
    pub root: Complex64,
    pub poly: ComplexPoly,
}

/// A sum of polynomially modulated exponentials `f_n = sum_k P_k(n) lambda_k^n`
/// with pairwise distinct nonzero roots and nonzero polynomials. The empty
/// model is the identically-zero series.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalModel {
    terms: Vec<ModelTerm>,
}

impl SignalModel {
    /// Validates and canonicalizes: roots must be nonzero and pairwise
    /// distinct, polynomials nonzero. Terms are ordered by `(|root|, arg)`
    /// descending for deterministic serialization.
    pub fn new(terms: Vec<ModelTerm>) -> Result<Self> {
        for t in &terms {
            if t.root.norm() == 0.0 {
                return Err(Error::InvalidModel("root at zero"));
            }
            if t.poly.is_zero() {
                return Err(Error::InvalidModel("zero polynomial term"));
            }
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                let scale = terms[i].root.norm().max(terms[j].root.norm());
                if (terms[i].root - terms[j].root).norm() <= 1e-12 * scale {
                    return Err(Error::InvalidModel("duplicate roots"));
                }
            }
        }
        let mut terms = terms;
        terms.sort_by(|a, b| {
            let ka = (a.root.norm(), a.root.arg());
            let kb = (b.root.norm(), b.root.arg());
            kb.partial_cmp(&ka).unwrap_or(core::cmp::Ordering::Equal)
        });
        Ok(Self { terms })
    }

    /// The identically-zero series (difference dimension 0).
    pub fn empty() -> Self {
        Self { terms: Vec::new() }
    }

    /// Single exponential `c * lambda^n`.
    pub fn exponential(root: Complex64, coeff: Complex64) -> Result<Self> {
        Self::new(vec![ModelTerm {
            root,
            poly: ComplexPoly::constant(coeff),
        }])
    }

    pub fn terms(&self) -> &[ModelTerm] {
        &self.terms
    }

    /// Difference dimension `d = sum_k (deg P_k + 1)`.
    pub fn difference_dimension(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.poly.degree().unwrap_or(0) + 1)
            .sum()
    }

    /// Signal roots with multiplicities `deg P_k + 1`.
    pub fn root_clusters(&self) -> Vec<RootCluster> {
        self.terms
            .iter()
            .map(|t| RootCluster {
                value: t.root,
                multiplicity: t.poly.degree().unwrap_or(0) + 1,
            })
            .collect()
    }

    /// Monic characteristic polynomial `prod_k (z - lambda_k)^{nu_k}`.
    pub fn char_poly(&self) -> ComplexPoly {
        ComplexPoly::from_roots(&self.root_clusters())
    }

    /// Evaluates `f_n` for `n = 0..len`.
    pub fn generate(&self, len: usize) -> TimeSeries {
        let mut samples = vec![Complex64::new(0.0, 0.0); len];
        for t in &self.terms {
            let mut pow = Complex64::new(1.0, 0.0);
            for (n, s) in samples.iter_mut().enumerate() {
                *s += t.poly.eval(Complex64::new(n as f64, 0.0)) * pow;
                pow *= t.root;
            }
        }
        TimeSeries { samples }
    }

    /// True when the roots are closed under conjugation with conjugate
    /// polynomial coefficients, i.e. the generated series is real.
    pub fn is_real(&self) -> bool {
        self.generate(2 * self.difference_dimension().max(1))
            .samples()
            .iter()
            .all(|s| s.im.abs() <= 1e-12 * (1.0 + s.re.abs()))
    }
}

/// A finite complex-valued time series.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<Complex64>,
}

impl TimeSeries {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::SeriesTooShort { len: 0, min: 1 });
        }
        Ok(Self { samples })
    }

    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn reversed(&self) -> Self {
        Self {
            samples: self.samples.iter().rev().copied().collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|s| s.norm()).fold(0.0, f64::max)
    }
}

/// A linear recursion `f_{n+r} = sum_{k=0}^{r-1} a_k f_{n+k}` of order `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lrf {
    coeffs: Vec<Complex64>,
}

impl Lrf {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    /// The minimal recursion of a series with monic characteristic polynomial
    /// `P`: order `deg P` with coefficients `a_k = -p_k`. `P(0)` must be
    /// nonzero, since recursions with a vanishing last coefficient fall
    /// outside this representation.
    pub fn minimal(p: &ComplexPoly) -> Result<Self> {
        let monic = p.monic()?;
        if monic.degree() == Some(0) {
            return Ok(Self { coeffs: Vec::new() });
        }
        let c = monic.coeffs();
        if c[0].norm() == 0.0 {
            return Err(Error::RootAtZero);
        }
        Ok(Self {
            coeffs: c[..c.len() - 1].iter().map(|&x| -x).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_0 .. a_{r-1}`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Characteristic polynomial `z^r - a_{r-1} z^{r-1} - ... - a_0`.
    pub fn char_poly(&self) -> ComplexPoly {
        let mut c: Vec<Complex64> = self.coeffs.iter().map(|&a| -a).collect();
        c.push(Complex64::new(1.0, 0.0));
        ComplexPoly::from_coeffs(c)
    }
}

/// Continuation direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// True when the recursion residual stays below `tol * max |f_n|` over every
/// admissible offset.
pub fn satisfies_lrf(series: &TimeSeries, lrf: &Lrf, tol: f64) -> bool {
    let r = lrf.order();
    let f = series.samples();
    if r >= f.len() {
        return false;
    }
    let scale = series.max_abs().max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for n in 0..f.len() - r {
        let mut pred = Complex64::new(0.0, 0.0);
        for (k, &a) in lrf.coeffs().iter().enumerate() {
            pred += a * f[n + k];
        }
        worst = worst.max((f[n + r] - pred).norm());
    }
    worst < tol * scale
}

/// Extends the series by `steps` samples using the recursion. Backward
/// continuation solves for the earliest value and needs `a_0 != 0`.
pub fn continue_series(
    series: &TimeSeries,
    lrf: &Lrf,
    steps: usize,
    direction: Direction,
) -> Result<TimeSeries> {
    let r = lrf.order();
    if r > series.len() {
        return Err(Error::SeriesTooShort {
            len: series.len(),
            min: r,
        });
    }
    if r == 0 {
        // Zero-order recursion continues the zero series.
        let mut samples = series.samples().to_vec();
        match direction {
            Direction::Forward => {
                samples.extend(core::iter::repeat_n(Complex64::new(0.0, 0.0), steps))
            }
            Direction::Backward => {
                let mut head = vec![Complex64::new(0.0, 0.0); steps];
                head.extend(samples);
                samples = head;
            }
        }
        return TimeSeries::new(samples);
    }
    let a = lrf.coeffs();
    match direction {
        Direction::Forward => {
            let mut f = series.samples().to_vec();
            for _ in 0..steps {
                let n = f.len() - r;
                let mut next = Complex64::new(0.0, 0.0);
                for (k, &ak) in a.iter().enumerate() {
                    next += ak * f[n + k];
                }
                f.push(next);
            }
            TimeSeries::new(f)
        }
        Direction::Backward => {
            if a[0].norm() == 0.0 {
                return Err(Error::ZeroLeadCoefficient);
            }
            let mut f = series.samples().to_vec();
            for _ in 0..steps {
                // f[r-1+n] known for the window starting at the new sample:
                // f_{n+r} = sum a_k f_{n+k}  =>  f_n = (f_{n+r} - sum_{k>=1} a_k f_{n+k}) / a_0
                let mut rest = Complex64::new(0.0, 0.0);
                for (k, &ak) in a.iter().enumerate().skip(1) {
                    rest += ak * f[k - 1];
                }
                let new = (f[r - 1] - rest) / a[0];
                f.insert(0, new);
            }
            TimeSeries::new(f)
        }
    }
}

/// One term of the real-valued form: `P(n) * rho^n * cos(2 pi omega n + phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealTerm {
    pub rho: f64,
    pub omega: f64,
    pub phi: f64,
    /// Real polynomial coefficients, ascending.
    pub poly: Vec<f64>,
}

/// Converts real-form terms to the complex model. Terms with `omega = 0`
/// map to a single real root `rho`; others to the conjugate pair
/// `rho e^{+-2 pi i omega}` with halved, phase-rotated polynomials. Terms
/// that land on the same root are merged.
pub fn real_to_complex(terms: &[RealTerm]) -> Result<SignalModel> {
    let mut merged: Vec<ModelTerm> = Vec::new();
    let mut push = |root: Complex64, poly: ComplexPoly| {
        if poly.is_zero() {
            return;
        }
        for t in merged.iter_mut() {
            if (t.root - root).norm() <= 1e-12 * root.norm() {
                t.poly = t.poly.add(&poly);
                return;
            }
        }
        merged.push(ModelTerm { root, poly });
    };
    for term in terms {
        if term.omega.abs() >= 0.5 {
            return Err(Error::InvalidFrequency { omega: term.omega });
        }
        if term.rho <= 0.0 {
            return Err(Error::InvalidModel("modulus must be positive"));
        }
        let p =
            ComplexPoly::from_coeffs(term.poly.iter().map(|&c| Complex64::new(c, 0.0)).collect());
        if p.is_zero() {
            continue;
        }
        if term.omega == 0.0 {
            let scaled = p.scale(Complex64::new(term.phi.cos(), 0.0));
            push(Complex64::new(term.rho, 0.0), scaled);
        } else {
            let angle = core::f64::consts::TAU * term.omega;
            let root = Complex64::from_polar(term.rho, angle);
            let half_phase = Complex64::from_polar(0.5, term.phi);
            push(root, p.scale(half_phase));
            push(root.conj(), p.scale(half_phase.conj()));
        }
    }
    merged.retain(|t| !t.poly.is_zero());
    SignalModel::new(merged)
}
