//! Hankel trajectory matrices, trajectory/relations space bases, numerical
//! rank and continuability tests.

use alloc::{vec, vec::Vec};
use num_complex::Complex64;
// f64 math comes from num-traits (libm) when no std is in the crate graph;
// builds that do link std resolve the methods inherently instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, SvdLeft};
use crate::poly::ComplexPoly;
use crate::series::{Direction, SignalModel, TimeSeries};

/// The `L x K` Hankel matrix of lagged windows, `K = N - L + 1`,
/// with entry `(i, j) = f_{i+j}` exactly. Stored column-major so that the
/// lagged vectors are contiguous.
#[derive(Debug, Clone)]
pub struct TrajectoryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl TrajectoryMatrix {
    /// Embeds the series with window length `L`, `1 < L < N`.
    pub fn hankel(series: &TimeSeries, window: usize) -> Result<Self> {
        let n = series.len();
        if window <= 1 || window >= n {
            return Err(Error::WindowOutOfRange { window, len: n });
        }
        let rows = window;
        let cols = n - window + 1;
        let f = series.samples();
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            data.extend_from_slice(&f[j..j + rows]);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn window(&self) -> usize {
        self.rows
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[j * self.rows + i]
    }

    /// The `j`-th lagged vector.
    pub fn column(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub(crate) fn svd(&self) -> SvdLeft {
        linalg::svd_left(self.rows, self.cols, &self.data)
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        self.svd().sigma
    }

    /// Count of singular values above `rel_tol * sigma_1`. The default
    /// tolerance is `max(L, K) * 1e-12`.
    pub fn numerical_rank(&self, rel_tol: Option<f64>) -> usize {
        let sigma = self.singular_values();
        numerical_rank_of(&sigma, self.rows, self.cols, rel_tol)
    }
}

pub(crate) fn default_rank_tol(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * 1e-12
}

pub(crate) fn numerical_rank_of(
    sigma: &[f64],
    rows: usize,
    cols: usize,
    rel_tol: Option<f64>,
) -> usize {
    let tol = rel_tol.unwrap_or_else(|| default_rank_tol(rows, cols));
    match sigma.first() {
        None | Some(&0.0) => 0,
        Some(&s1) => sigma.iter().filter(|&&s| s > tol * s1).count(),
    }
}

/// An orthonormal set of vectors spanning (an estimate of) the trajectory
/// space.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    vectors: Vec<Vec<Complex64>>,
}

impl SubspaceBasis {
    /// Wraps vectors that are already orthonormal (Gram defect below 1e-10).
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyBasis);
        }
        for i in 0..vectors.len() {
            for j in i..vectors.len() {
                let mut g = Complex64::new(0.0, 0.0);
                for (a, b) in vectors[i].iter().zip(&vectors[j]) {
                    g += a.conj() * b;
                }
                let want = if i == j { 1.0 } else { 0.0 };
                if (g.norm() - want).abs() > 1e-10 {
                    return Err(Error::InvalidModel("basis is not orthonormal"));
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector_len(&self) -> usize {
        self.vectors.first().map_or(0, Vec::len)
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// Relative norm of the component of `v` outside the span, computed from
    /// the explicit residual vector (which stays accurate for vectors close
    /// to the span, unlike `1 - |projection|^2`).
    pub fn residual_outside(&self, v: &[Complex64]) -> f64 {
        let mut r = v.to_vec();
        for u in &self.vectors {
            let mut ip = Complex64::new(0.0, 0.0);
            for (a, b) in u.iter().zip(v) {
                ip += a.conj() * b;
            }
            for (ri, ui) in r.iter_mut().zip(u) {
                *ri -= ui * ip;
            }
        }
        let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let rn: f64 = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn == 0.0 {
            0.0
        } else {
            rn / vn
        }
    }
}

/// Orthonormal basis of the span of the `d` leading left singular vectors.
/// Fails with `RankDeficient` when `sigma_d` is numerically zero relative to
/// `sigma_1`, i.e. the requested dimension exceeds the numerical rank.
pub fn trajectory_basis(x: &TrajectoryMatrix, d: usize) -> Result<SubspaceBasis> {
    if d == 0 || d > x.rows.min(x.cols) {
        return Err(Error::RankDeficient {
            requested: d,
            rank: x.rows.min(x.cols),
        });
    }
    let svd = x.svd();
    let rank = numerical_rank_of(&svd.sigma, x.rows, x.cols, None);
    if d > rank {
        return Err(Error::RankDeficient { requested: d, rank });
    }
    SubspaceBasis::new(svd.left.into_iter().take(d).collect())
}

/// Basis of the trajectory space of a noisy series: the `d` leading left
/// singular vectors regardless of the spectral gap.
pub fn trajectory_basis_truncated(x: &TrajectoryMatrix, d: usize) -> Result<SubspaceBasis> {
    if d == 0 || d > x.rows.min(x.cols) {
        return Err(Error::RankDeficient {
            requested: d,
            rank: x.rows.min(x.cols),
        });
    }
    let svd = x.svd();
    SubspaceBasis::new(svd.left.into_iter().take(d).collect())
}

/// The banded `L x (L - d)` matrix whose column `j` carries the coefficients
/// of `z^j P(z)`: entries `p_0 .. p_d` at offsets `j .. j+d`. Its conjugated
/// column span is the orthogonal complement of the trajectory space of any
/// series with characteristic polynomial `P`.
#[derive(Debug, Clone)]
pub struct RelationsBasisMatrix {
    window: usize,
    poly: ComplexPoly,
}

impl RelationsBasisMatrix {
    pub fn rows(&self) -> usize {
        self.window
    }

    pub fn cols(&self) -> usize {
        self.window - self.poly.degree().unwrap_or(0)
    }

    pub fn poly(&self) -> &ComplexPoly {
        &self.poly
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        let d = self.poly.degree().unwrap_or(0);
        if i >= j && i <= j + d {
            self.poly.coeffs()[i - j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        let mut col = vec![Complex64::new(0.0, 0.0); self.window];
        for (k, &p) in self.poly.coeffs().iter().enumerate() {
            col[j + k] = p;
        }
        col
    }
}

/// Builds the relations-space basis matrix for a monic characteristic
/// polynomial and window `L > deg P`.
pub fn relations_basis(p: &ComplexPoly, window: usize) -> Result<RelationsBasisMatrix> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if window <= d {
        return Err(Error::WindowTooSmall { window, degree: d });
    }
    Ok(RelationsBasisMatrix {
        window,
        poly: p.monic()?,
    })
}

/// Derivative-of-powers basis of the trajectory space: for each root
/// `lambda_j` of multiplicity `nu_j`, the vectors
/// `d^k/d lambda^k (1, lambda, ..., lambda^{L-1})` for `k < nu_j`.
pub fn vandermonde_basis(model: &SignalModel, window: usize) -> Result<Vec<Vec<Complex64>>> {
    let d = model.difference_dimension();
    if window <= d {
        return Err(Error::WindowTooSmall { window, degree: d });
    }
    let mut out = Vec::with_capacity(d);
    for term in model.terms() {
        let nu = term.poly.degree().unwrap_or(0) + 1;
        for k in 0..nu {
            out.push(derivative_power_vector(term.root, k, window));
        }
    }
    Ok(out)
}

/// `d^k/d lambda^k (1, lambda, ..., lambda^{L-1})`: zeros up to index `k-1`,
/// then `(k+j)!/j! * lambda^j` at index `k + j`.
pub fn derivative_power_vector(lambda: Complex64, k: usize, window: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); window];
    let mut factor = 1.0;
    for i in 2..=k {
        factor *= i as f64;
    }
    let mut pow = Complex64::new(1.0, 0.0);
    for j in 0..window.saturating_sub(k) {
        // factor = (k+j)! / j!
        v[k + j] = pow * factor;
        factor = factor / (j as f64 + 1.0) * (k + j + 1) as f64;
        pow *= lambda;
    }
    v
}

/// Residual of projecting the coordinate vector `e_idx` onto the span of the
/// given orthonormal vectors.
fn coordinate_residual(basis: &[Vec<Complex64>], e_index: usize, len: usize) -> f64 {
    let mut r = vec![Complex64::new(0.0, 0.0); len];
    r[e_index] = Complex64::new(1.0, 0.0);
    for u in basis {
        let ip = u[e_index].conj();
        for (ri, ui) in r.iter_mut().zip(u) {
            *ri -= ui * ip;
        }
    }
    r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Whether the series admits unique continuation at window `L <= N/2`: the
/// coordinate vector `e_L` (forward) or `e_1` (backward) must stay outside
/// the trajectory space, tested against the numerical-rank basis with a
/// residual threshold of 1e-8.
pub fn is_continuable(series: &TimeSeries, window: usize, direction: Direction) -> Result<bool> {
    let n = series.len();
    if window <= 1 || 2 * window > n {
        return Err(Error::WindowOutOfRange { window, len: n });
    }
    let x = TrajectoryMatrix::hankel(series, window)?;
    let svd = x.svd();
    let rank = numerical_rank_of(&svd.sigma, x.rows(), x.cols(), None);
    let basis: Vec<Vec<Complex64>> = svd.left.into_iter().take(rank).collect();
    let e_index = match direction {
        Direction::Forward => window - 1,
        Direction::Backward => 0,
    };
    Ok(coordinate_residual(&basis, e_index, window) > 1e-8)
}
