//! The forecasting recursion of subspace analysis (the Min-Norm vector), its
//! factorization into signal and extraneous parts, and the orthogonal
//! polynomial structure of the extraneous factor.
//!
//! For a series with monic characteristic polynomial `P` of degree `d` and
//! window `L`, the vector `A = c * proj(e_L onto relations space)` factors as
//! `A(z) / c = P(z) * H_n(z)` with `n = L - d - 1`. The polynomials `H_n` are
//! orthogonal on the unit circle with respect to the weight `|P(z)|^2`, which
//! pins down everything about the extraneous roots.

use alloc::{vec, vec::Vec};
use num_complex::Complex64;
// f64 math comes from num-traits (libm) when no std is in the crate graph;
// builds that do link std resolve the methods inherently instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{self, SquareMat};
use crate::poly::{cluster_points, ComplexPoly, RootCluster};
use crate::rng::SplitMix64;
use crate::series::TimeSeries;
use crate::trajectory::{trajectory_basis_truncated, SubspaceBasis, TrajectoryMatrix};

/// The order-(L-1) forecasting vector. `a` has length `L` with last entry
/// exactly 1; the recursion coefficients are `-a[0..L-1]` and the scale
/// satisfies `c = 1 / (1 - nu^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SsaLrf {
    a: Vec<Complex64>,
    scale: f64,
    nu2: f64,
}

impl SsaLrf {
    pub fn window(&self) -> usize {
        self.a.len()
    }

    /// The vector `A = (-R^T, 1)^T`.
    pub fn a_vector(&self) -> &[Complex64] {
        &self.a
    }

    /// Recursion coefficients `a_0 .. a_{L-2}` with `f_{n+L-1} = sum a_k f_{n+k}`.
    pub fn r_coeffs(&self) -> Vec<Complex64> {
        self.a[..self.a.len() - 1].iter().map(|&x| -x).collect()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn nu2(&self) -> f64 {
        self.nu2
    }

    /// Generating polynomial of `A` (degree `L - 1`, monic).
    pub fn a_poly(&self) -> ComplexPoly {
        ComplexPoly::from_coeffs(self.a.clone())
    }
}

/// Builds the forecasting vector from an orthonormal basis of the signal
/// subspace: `R = (1/(1-nu^2)) sum_k pi_k conj(U^up_k)` where `pi_k` is the
/// last coordinate of the k-th basis vector and `nu^2 = sum |pi_k|^2`.
/// Fails with `Verticality` when `e_L` is numerically inside the subspace.
pub fn ssa_lrf_from_subspace(basis: &SubspaceBasis) -> Result<SsaLrf> {
    let l = basis.vector_len();
    if l < 2 {
        return Err(Error::WindowTooSmall {
            window: l,
            degree: 0,
        });
    }
    let mut nu2 = 0.0;
    for u in basis.vectors() {
        nu2 += u[l - 1].norm_sqr();
    }
    if nu2 >= 1.0 - 1e-10 {
        return Err(Error::Verticality { nu2 });
    }
    let mut r = vec![Complex64::new(0.0, 0.0); l - 1];
    for u in basis.vectors() {
        let pi = u[l - 1];
        for (k, rk) in r.iter_mut().enumerate() {
            *rk += pi * u[k].conj();
        }
    }
    let scale = 1.0 / (1.0 - nu2);
    let mut a: Vec<Complex64> = r.iter().map(|&x| -x * scale).collect();
    a.push(Complex64::new(1.0, 0.0));
    Ok(SsaLrf { a, scale, nu2 })
}

/// Builds the forecasting vector directly from the characteristic
/// polynomial: `A = c * P_matrix * H_n` where `H_n` solves the banded
/// Hermitian Toeplitz system. This is the exact algebraic route.
pub fn ssa_vector_by_projection(p: &ComplexPoly, window: usize) -> Result<SsaLrf> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if window <= d {
        return Err(Error::WindowTooSmall { window, degree: d });
    }
    let n = window - d - 1;
    let monic = p.monic()?;
    let h = extraneous_poly(&monic, n)?;
    // B(z) = P(z) H_n(z); the last coefficient of B is the leading h, which
    // is also <proj e_L, e_L>.
    let b = monic.mul(&h.h);
    let h_lead = h.norm_sq_t();
    let mut a: Vec<Complex64> = b.coeffs().iter().map(|&x| x / h_lead).collect();
    a.resize(window, Complex64::new(0.0, 0.0));
    a[window - 1] = Complex64::new(1.0, 0.0);
    let scale = 1.0 / h_lead;
    Ok(SsaLrf {
        a,
        scale,
        nu2: 1.0 - h_lead,
    })
}

/// The Hermitian band `t_{-d} .. t_d` of the Toeplitz matrix `P* P`:
/// `t_k = sum_j conj(p_j) p_{k+j}`, the autocorrelation of the coefficients.
/// On the unit circle `t(z) = |P(z)|^2 >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzBand {
    /// `t_0 .. t_d`.
    t: Vec<Complex64>,
}

impl ToeplitzBand {
    pub fn bandwidth(&self) -> usize {
        self.t.len() - 1
    }

    /// `t_k` with Hermitian extension, zero beyond the band.
    pub fn coeff(&self, k: isize) -> Complex64 {
        let d = self.bandwidth() as isize;
        if k >= 0 && k <= d {
            self.t[k as usize]
        } else if k < 0 && -k <= d {
            self.t[(-k) as usize].conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// The band scaled by a positive constant (same orthogonal family).
    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            t: self.t.iter().map(|&x| x * alpha).collect(),
        }
    }

    /// Evaluates the symbol `t(z) = sum_{k=-d}^{d} t_k z^k`.
    pub fn symbol(&self, z: Complex64) -> Complex64 {
        let zinv = z.finv();
        let mut acc = self.t[0];
        let mut zp = Complex64::new(1.0, 0.0);
        let mut zm = Complex64::new(1.0, 0.0);
        for k in 1..self.t.len() {
            zp *= z;
            zm *= zinv;
            acc += self.t[k] * zp + self.t[k].conj() * zm;
        }
        acc
    }
}

/// Autocorrelation band of a monic polynomial.
pub fn toeplitz_coeffs(p: &ComplexPoly) -> Result<ToeplitzBand> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    let monic = p.monic()?;
    let c = monic.coeffs();
    let mut t = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=d - k {
            acc += c[j].conj() * c[k + j];
        }
        t.push(acc);
    }
    Ok(ToeplitzBand { t })
}

/// The degree-`n` extraneous polynomial: the unique solution of
/// `T_n H_n = e_{n+1}` with `T_n` the Hermitian banded Toeplitz matrix of
/// the weight. Stored unnormalized; the leading coefficient is real positive
/// and equals the squared weighted norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtraneousPoly {
    pub h: ComplexPoly,
    pub n: usize,
}

impl ExtraneousPoly {
    /// `||H_n||_t^2`, which is the leading coefficient.
    pub fn norm_sq_t(&self) -> f64 {
        self.h.leading().map_or(0.0, |c| c.re)
    }

    pub fn monic(&self) -> Result<ComplexPoly> {
        self.h.monic()
    }

    /// The polynomial rescaled to unit weighted norm.
    pub fn unit_norm(&self) -> ComplexPoly {
        let nrm = self.norm_sq_t().sqrt();
        self.h.scale(Complex64::new(1.0 / nrm, 0.0))
    }

    pub fn roots(&self) -> Result<Vec<Complex64>> {
        self.h.roots()
    }
}

/// Solves the defining system for `H_n` by banded LU with partial pivoting.
pub fn extraneous_poly(p: &ComplexPoly, n: usize) -> Result<ExtraneousPoly> {
    let band = toeplitz_coeffs(p)?;
    extraneous_poly_from_band(&band, n)
}

/// Same computation from a precomputed (possibly rescaled) band.
pub fn extraneous_poly_from_band(band: &ToeplitzBand, n: usize) -> Result<ExtraneousPoly> {
    let d = band.bandwidth();
    let size = n + 1;
    let mut m = SquareMat::zeros(size);
    for i in 0..size {
        for j in 0..size {
            let k = i as isize - j as isize;
            if k.unsigned_abs() <= d {
                m.set(i, j, band.coeff(k));
            }
        }
    }
    let mut rhs = vec![Complex64::new(0.0, 0.0); size];
    rhs[size - 1] = Complex64::new(1.0, 0.0);
    linalg::banded_lu_solve(size, d.min(size - 1), d.min(size - 1), &mut m, &mut rhs)?;
    let h = ComplexPoly::from_coeffs(rhs);
    if h.degree() != Some(n) {
        return Err(Error::SingularSystem);
    }
    Ok(ExtraneousPoly { h, n })
}

/// Cross-validation route: solves the Yule-Walker form `T G = e_1` by the
/// Levinson-Durbin recursion and reverses. Exposes the Szego recursion
/// structure of the orthogonal family.
pub fn extraneous_poly_levinson(p: &ComplexPoly, n: usize) -> Result<ExtraneousPoly> {
    let band = toeplitz_coeffs(p)?;
    let mut first_col = vec![Complex64::new(0.0, 0.0); n + 1];
    for (k, v) in first_col.iter_mut().enumerate() {
        *v = band.coeff(k as isize);
    }
    let g = linalg::levinson_unit_first(&first_col)?;
    // H_n coefficients are the conjugated reversal of G.
    let h = ComplexPoly::from_coeffs(g.iter().rev().map(|z| z.conj()).collect());
    if h.degree() != Some(n) {
        return Err(Error::SingularSystem);
    }
    Ok(ExtraneousPoly { h, n })
}

/// Exact inner product `<p, q>_t = sum_{k,l} p_k conj(q_l) t_{l-k}`, equal to
/// the circle integral of `p conj(q) t` without quadrature. The orientation
/// follows `<z^l, z^k> = t_{k-l}`, which makes the defining system read
/// `<H_n, z^k> = delta_{k,n}`.
pub fn weighted_inner_product(p: &ComplexPoly, q: &ComplexPoly, band: &ToeplitzBand) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, &pk) in p.coeffs().iter().enumerate() {
        for (l, &ql) in q.coeffs().iter().enumerate() {
            let t = band.coeff(l as isize - k as isize);
            if t.re != 0.0 || t.im != 0.0 {
                acc += pk * ql.conj() * t;
            }
        }
    }
    acc
}

/// Orthogonality audit of the family `H_0 .. H_{n_max}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    pub n_max: usize,
    /// Largest `|<H_n, H_m>| / (||H_n|| ||H_m||)` over `m < n`.
    pub max_cross: f64,
    /// Largest relative defect of `||H_n||^2 = leading coefficient`.
    pub max_norm_defect: f64,
    pub passed: bool,
}

/// Checks pairwise orthogonality and the norm identity for `n <= n_max`.
pub fn verify_orthogonality(
    p: &ComplexPoly,
    n_max: usize,
    tol: f64,
) -> Result<OrthogonalityReport> {
    let band = toeplitz_coeffs(p)?;
    let polys: Vec<ExtraneousPoly> = (0..=n_max)
        .map(|n| extraneous_poly_from_band(&band, n))
        .collect::<Result<_>>()?;
    let norms: Vec<f64> = polys
        .iter()
        .map(|h| weighted_inner_product(&h.h, &h.h, &band).re.max(0.0).sqrt())
        .collect();
    let mut max_cross = 0.0f64;
    for n in 0..=n_max {
        for m in 0..n {
            let ip = weighted_inner_product(&polys[n].h, &polys[m].h, &band);
            max_cross = max_cross.max(ip.norm() / (norms[n] * norms[m]));
        }
    }
    let mut max_norm_defect = 0.0f64;
    for (h, nrm) in polys.iter().zip(&norms) {
        let lead = h.norm_sq_t();
        max_norm_defect = max_norm_defect.max((nrm * nrm - lead).abs() / lead.max(1e-300));
    }
    Ok(OrthogonalityReport {
        n_max,
        max_cross,
        max_norm_defect,
        passed: max_cross < tol && max_norm_defect < tol,
    })
}

/// Extraneous roots of the reversed series' forecasting recursion. The
/// reversed series has characteristic polynomial `p_0^{-1} * reverse(P)`,
/// whose weight produces an orthogonal family with roots conjugate to the
/// forward ones. With `conjugated_convention` the coefficients of the
/// backward recursion are conjugated instead, making the root sets coincide.
pub fn backward_extraneous_roots(
    p: &ComplexPoly,
    n: usize,
    conjugated_convention: bool,
) -> Result<Vec<Complex64>> {
    let monic = p.monic()?;
    let c = monic.coeffs();
    if c[0].norm() == 0.0 {
        return Err(Error::RootAtZero);
    }
    let reversed = ComplexPoly::from_coeffs(c.iter().rev().copied().collect());
    let reversed_monic = reversed.monic()?;
    let h = extraneous_poly(&reversed_monic, n)?;
    let roots = h.roots()?;
    if conjugated_convention {
        Ok(roots.iter().map(|z| z.conj()).collect())
    } else {
        Ok(roots)
    }
}

/// Checks the minimal-norm property of a candidate vector `a` (last
/// coordinate 1, generating polynomial a multiple of `P`): its
/// leading-coordinate norm must not exceed that of any comparison vector
/// from the relations space with unit last coordinate. The comparison set is
/// the true projection vector plus `trials` random perturbations.
pub fn min_norm_check(a: &[Complex64], p: &ComplexPoly, trials: usize, seed: u64) -> Result<bool> {
    let window = a.len();
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if window <= d {
        return Err(Error::WindowTooSmall { window, degree: d });
    }
    if (a[window - 1] - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::InvalidModel("last coordinate must be 1"));
    }
    let monic = p.monic()?;
    let n = window - d - 1;
    let base: f64 = a[..window - 1].iter().map(|z| z.norm_sqr()).sum();
    let beats = |w: ComplexPoly| -> bool {
        // A relations-space vector with last coordinate 1 has generating
        // polynomial P(z) W(z) with the leading coefficient of W equal to 1.
        let v = monic.mul(&w);
        let vc = v.coeffs();
        let norm: f64 = vc[..window - 1].iter().map(|z| z.norm_sqr()).sum();
        base > norm + 1e-12 * (1.0 + norm)
    };
    // The minimizer itself: W = H_n / h_n, which has unit leading term.
    let h = extraneous_poly(&monic, n)?;
    if beats(h.h.scale(Complex64::new(1.0 / h.norm_sq_t(), 0.0))) {
        return Ok(false);
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..trials {
        let mut w = vec![Complex64::new(0.0, 0.0); n + 1];
        for item in w.iter_mut().take(n) {
            *item = rng.complex_normal();
        }
        w[n] = Complex64::new(1.0, 0.0);
        if beats(ComplexPoly::from_coeffs(w)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of root-based signal estimation from a (possibly noisy) series.
#[derive(Debug, Clone)]
pub struct RootEstimate {
    /// The `d` largest-modulus roots, clustered.
    pub signal: Vec<RootCluster>,
    /// The remaining roots of the forecasting polynomial.
    pub extraneous: Vec<Complex64>,
    /// Set when every estimated signal root has modulus below `1 - margin`,
    /// where this estimator is known to be unreliable.
    pub all_inside_disk: bool,
    pub lrf: SsaLrf,
}

/// Root-based estimation: build the subspace from the `d` leading left
/// singular vectors, form the forecasting vector, and take its `d` largest
/// roots by modulus as signal estimates.
pub fn estimate_signal_roots(series: &TimeSeries, window: usize, d: usize) -> Result<RootEstimate> {
    let n = series.len();
    if d >= window || 2 * window > n {
        return Err(Error::WindowOutOfRange { window, len: n });
    }
    let x = TrajectoryMatrix::hankel(series, window)?;
    let basis = trajectory_basis_truncated(&x, d)?;
    let lrf = ssa_lrf_from_subspace(&basis)?;
    let mut roots = lrf.a_poly().roots()?;
    roots.sort_by(|a, b| {
        b.norm()
            .partial_cmp(&a.norm())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let signal_raw = &roots[..d.min(roots.len())];
    let extraneous = roots[d.min(roots.len())..].to_vec();
    let margin = 0.05;
    let all_inside = signal_raw.iter().all(|z| z.norm() < 1.0 - margin);
    let signal = cluster_points(signal_raw, None);
    Ok(RootEstimate {
        signal,
        extraneous,
        all_inside_disk: all_inside,
        lrf,
    })
}
