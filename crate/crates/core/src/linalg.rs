//! Dense complex linear algebra kernels: balanced Hessenberg QR eigenvalues,
//! one-sided Jacobi SVD, band-limited LU, and the Levinson recursion for
//! Hermitian Toeplitz systems.
//!
//! Everything here is sized for the windows used in subspace analysis
//! (dimensions up to a few hundred), favouring accuracy and simplicity over
//! large-scale performance.

use alloc::{vec, vec::Vec};
use num_complex::Complex64;
// f64 math comes from num-traits (libm) when no std is in the crate graph;
// builds that do link std resolve the methods inherently instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Cheap magnitude `|re| + |im|`, the norm used by the eigenvalue iteration.
#[inline]
fn abs1(z: Complex64) -> f64 {
    z.re.abs() + z.im.abs()
}

/// Row-major square complex matrix. Internal working type only.
pub(crate) struct SquareMat {
    n: usize,
    a: Vec<Complex64>,
}

impl SquareMat {
    pub(crate) fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> Complex64 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.a[i * self.n + j] = v;
    }
}

/// Parlett-Reinsch balancing: diagonal similarity scaling with radix-2
/// factors so that row and column 1-norms become comparable. Reduces the
/// eigenvalue sensitivity of companion matrices with widely ranged
/// coefficients.
fn balance(m: &mut SquareMat) {
    let n = m.n;
    let radix: f64 = 2.0;
    let sqrdx = radix * radix;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += abs1(m.at(j, i));
                    r += abs1(m.at(i, j));
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let mut cc = c;
            let mut rr = r;
            let s = c + r;
            while cc < rr / radix {
                f *= radix;
                cc *= sqrdx;
                rr /= sqrdx;
            }
            while cc >= rr * radix {
                f /= radix;
                cc /= sqrdx;
                rr *= sqrdx;
            }
            if (cc + rr) < 0.95 * s {
                converged = false;
                let g = 1.0 / f;
                for j in 0..n {
                    let v = m.at(i, j);
                    m.set(i, j, v * g);
                }
                for j in 0..n {
                    let v = m.at(j, i);
                    m.set(j, i, v * f);
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with real `c >= 0`
/// such that `G * [f, g]^T = [r, 0]^T`.
#[inline]
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let fn2 = f.norm_sqr();
    let gn2 = g.norm_sqr();
    if gn2 == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if fn2 == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let d = (fn2 + gn2).sqrt();
    let fa = fn2.sqrt();
    let c = fa / d;
    let s = (f / fa) * g.conj() / d;
    (c, s)
}

/// Eigenvalues of a 2x2 complex block `[[a, b], [c, d]]`.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let t = (a - d) * 0.5;
    let disc = (t * t + b * c).sqrt();
    (half_tr + disc, half_tr - disc)
}

/// Eigenvalues of a complex upper Hessenberg matrix by the explicit-shift QR
/// iteration with Wilkinson shifts and deflation (the classic `comqr` scheme).
/// Eigenvalues only; transforms are restricted to the active block.
fn hessenberg_eigenvalues(mut h: SquareMat) -> Result<Vec<Complex64>> {
    let n = h.n;
    let mut eig = Vec::with_capacity(n);
    if n == 0 {
        return Ok(eig);
    }
    let mut hi = n;
    let mut its = 0usize;
    let mut total = 0usize;
    let cap = 60 * n + 200;
    while hi > 0 {
        // Look for a negligible subdiagonal entry to split the problem.
        let mut lo = 0;
        for l in (1..hi).rev() {
            let s = abs1(h.at(l - 1, l - 1)) + abs1(h.at(l, l));
            let s = if s == 0.0 { 1.0 } else { s };
            if abs1(h.at(l, l - 1)) <= EPS * s {
                h.set(l, l - 1, Complex64::new(0.0, 0.0));
                lo = l;
                break;
            }
        }
        if lo == hi - 1 {
            eig.push(h.at(hi - 1, hi - 1));
            hi -= 1;
            its = 0;
            continue;
        }
        if lo == hi - 2 {
            let (e1, e2) = eig2(
                h.at(hi - 2, hi - 2),
                h.at(hi - 2, hi - 1),
                h.at(hi - 1, hi - 2),
                h.at(hi - 1, hi - 1),
            );
            eig.push(e1);
            eig.push(e2);
            hi -= 2;
            its = 0;
            continue;
        }
        total += 1;
        its += 1;
        if total > cap {
            return Err(Error::ConvergenceFailure);
        }

        let shift = if its.is_multiple_of(12) {
            // Exceptional shift to break rare cycles.
            let mut s = abs1(h.at(hi - 1, hi - 2));
            if hi >= 3 {
                s += abs1(h.at(hi - 2, hi - 3));
            }
            Complex64::new(s, 0.0)
        } else {
            // Wilkinson shift: the eigenvalue of the trailing 2x2 block
            // closest to the bottom-right entry.
            let a = h.at(hi - 2, hi - 2);
            let b = h.at(hi - 2, hi - 1);
            let c = h.at(hi - 1, hi - 2);
            let d = h.at(hi - 1, hi - 1);
            let t = (a - d) * 0.5;
            let disc = (t * t + b * c).sqrt();
            let denom = if abs1(t + disc) >= abs1(t - disc) {
                t + disc
            } else {
                t - disc
            };
            if abs1(denom) <= EPS * (abs1(a) + abs1(d)) {
                d
            } else {
                d - b * c / denom
            }
        };

        for i in lo..hi {
            let v = h.at(i, i) - shift;
            h.set(i, i, v);
        }

        // QR factorization of the shifted block by Givens rotations...
        let mut rot = Vec::with_capacity(hi - 1 - lo);
        for c0 in lo..hi - 1 {
            let (c, s) = givens(h.at(c0, c0), h.at(c0 + 1, c0));
            rot.push((c, s));
            for k in c0..hi {
                let x = h.at(c0, k);
                let y = h.at(c0 + 1, k);
                h.set(c0, k, c * x + s * y);
                h.set(c0 + 1, k, -s.conj() * x + c * y);
            }
        }
        // ...then form RQ, which restores Hessenberg structure.
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let c0 = lo + idx;
            let top = (c0 + 1).min(hi - 1);
            for i in lo..=top {
                let x = h.at(i, c0);
                let y = h.at(i, c0 + 1);
                h.set(i, c0, c * x + s.conj() * y);
                h.set(i, c0 + 1, -s * x + c * y);
            }
        }

        for i in lo..hi {
            let v = h.at(i, i) + shift;
            h.set(i, i, v);
        }
    }
    Ok(eig)
}

/// Eigenvalues of the balanced Frobenius companion matrix of a monic
/// polynomial given by its ascending coefficients (`coeffs[n] == 1`).
pub(crate) fn companion_eigenvalues(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut m = SquareMat::zeros(n);
    for i in 0..n - 1 {
        m.set(i + 1, i, Complex64::new(1.0, 0.0));
    }
    for (i, &c) in coeffs.iter().take(n).enumerate() {
        m.set(i, n - 1, -c);
    }
    balance(&mut m);
    hessenberg_eigenvalues(m)
}

/// Singular value decomposition data for a rectangular matrix: singular
/// values in descending order and the matching left singular vectors.
pub(crate) struct SvdLeft {
    pub sigma: Vec<f64>,
    /// `min(rows, cols)` orthonormal vectors of length `rows`.
    pub left: Vec<Vec<Complex64>>,
}

#[inline]
fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        s += x.conj() * y;
    }
    s
}

#[inline]
fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// One-sided Jacobi orthogonalization of the columns of `cols`. On return the
/// columns are mutually orthogonal; `v` (if supplied) accumulates the applied
/// rotations, so `original * v = converged`. Column pairs are rotated until
/// every normalized cross product falls below the convergence threshold.
fn jacobi_orthogonalize(cols: &mut [Vec<Complex64>], mut v: Option<&mut [Vec<Complex64>]>) {
    let n = cols.len();
    let tol = 1e-15;
    let max_sweeps = 60;
    for _ in 0..max_sweeps {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha = norm_sqr(&cols[p]);
                let beta = norm_sqr(&cols[q]);
                let g = dot_conj(&cols[p], &cols[q]);
                let gn = g.norm();
                if gn <= tol * (alpha * beta).sqrt() || alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                rotated = true;
                // Zeroing the cross term of the 2x2 Hermitian Gram block
                // [[alpha, g], [conj(g), beta]] needs t = s/c solving
                // t^2 - 2 tau t - 1 = 0 with tau = (alpha - beta) / (2|g|);
                // the smaller-magnitude root keeps the rotation inner.
                let phase = g / gn;
                let tau = (alpha - beta) / (2.0 * gn);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (head, tail) = cols.split_at_mut(q);
                let cp = &mut head[p];
                let cq = &mut tail[0];
                for i in 0..cp.len() {
                    let x = cp[i];
                    let y = cq[i];
                    cp[i] = c * x - s * (phase.conj() * y);
                    cq[i] = s * (phase * x) + c * y;
                }
                if let Some(vm) = v.as_deref_mut() {
                    let (vh, vt) = vm.split_at_mut(q);
                    let vp = &mut vh[p];
                    let vq = &mut vt[0];
                    for i in 0..vp.len() {
                        let x = vp[i];
                        let y = vq[i];
                        vp[i] = c * x - s * (phase.conj() * y);
                        vq[i] = s * (phase * x) + c * y;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

/// Left singular vectors and singular values of an `rows x cols` matrix given
/// in column-major order. When `rows <= cols` the rotations are accumulated
/// on the conjugate transpose so the left vectors come out exactly unitary.
pub(crate) fn svd_left(rows: usize, cols: usize, data: &[Complex64]) -> SvdLeft {
    debug_assert_eq!(data.len(), rows * cols);
    if rows <= cols {
        // Work on the conjugate transpose: `rows` columns of height `cols`.
        let mut work: Vec<Vec<Complex64>> = (0..rows)
            .map(|i| (0..cols).map(|j| data[j * rows + i].conj()).collect())
            .collect();
        let mut v: Vec<Vec<Complex64>> = (0..rows)
            .map(|i| {
                let mut e = vec![Complex64::new(0.0, 0.0); rows];
                e[i] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
        jacobi_orthogonalize(&mut work, Some(&mut v));
        let mut order: Vec<usize> = (0..rows).collect();
        let sig: Vec<f64> = work.iter().map(|c| norm_sqr(c).sqrt()).collect();
        order.sort_by(|&a, &b| sig[b].partial_cmp(&sig[a]).unwrap());
        // With the converged transpose factored as X^H = U Sigma V^H and the
        // rotations accumulated in `v`, the left singular vectors of the
        // original matrix are exactly the columns of `v`.
        let left = order.iter().map(|&j| v[j].clone()).collect();
        let sigma = order.iter().map(|&j| sig[j]).collect();
        SvdLeft { sigma, left }
    } else {
        let mut work: Vec<Vec<Complex64>> = (0..cols)
            .map(|j| data[j * rows..(j + 1) * rows].to_vec())
            .collect();
        jacobi_orthogonalize(&mut work, None);
        let mut order: Vec<usize> = (0..cols).collect();
        let sig: Vec<f64> = work.iter().map(|c| norm_sqr(c).sqrt()).collect();
        order.sort_by(|&a, &b| sig[b].partial_cmp(&sig[a]).unwrap());
        let mut left = Vec::with_capacity(cols);
        for &j in &order {
            let s = sig[j];
            if s > 0.0 {
                left.push(work[j].iter().map(|z| z / s).collect());
            } else {
                left.push(vec![Complex64::new(0.0, 0.0); rows]);
            }
        }
        let sigma = order.iter().map(|&j| sig[j]).collect();
        SvdLeft { sigma, left }
    }
}

/// Solves a band matrix system by LU with partial pivoting. The matrix is
/// supplied dense but only entries within `kl` sub- and `ku` super-diagonals
/// are referenced; pivoting widens the upper band to `kl + ku`.
pub(crate) fn banded_lu_solve(
    n: usize,
    kl: usize,
    ku: usize,
    a: &mut SquareMat,
    b: &mut [Complex64],
) -> Result<()> {
    debug_assert_eq!(a.n, n);
    debug_assert_eq!(b.len(), n);
    let wide = kl + ku;
    for k in 0..n {
        let last_row = (k + kl).min(n - 1);
        let mut piv = k;
        let mut best = a.at(k, k).norm_sqr();
        for i in k + 1..=last_row {
            let m = a.at(i, k).norm_sqr();
            if m > best {
                best = m;
                piv = i;
            }
        }
        if best == 0.0 {
            return Err(Error::SingularSystem);
        }
        if piv != k {
            let last_col = (k + wide).min(n - 1);
            for j in k..=last_col {
                let tmp = a.at(k, j);
                a.set(k, j, a.at(piv, j));
                a.set(piv, j, tmp);
            }
            b.swap(k, piv);
        }
        let pivot = a.at(k, k);
        for i in k + 1..=last_row {
            let m = a.at(i, k) / pivot;
            if m.norm_sqr() == 0.0 {
                continue;
            }
            let last_col = (k + wide).min(n - 1);
            for j in k + 1..=last_col {
                let v = a.at(i, j) - m * a.at(k, j);
                a.set(i, j, v);
            }
            b[i] -= m * b[k];
        }
    }
    for i in (0..n).rev() {
        let last_col = (i + wide).min(n - 1);
        let mut s = b[i];
        for (j, &bj) in b.iter().enumerate().take(last_col + 1).skip(i + 1) {
            s -= a.at(i, j) * bj;
        }
        let d = a.at(i, i);
        if d.norm_sqr() == 0.0 {
            return Err(Error::SingularSystem);
        }
        b[i] = s / d;
    }
    Ok(())
}

/// Levinson-Durbin recursion for a Hermitian Toeplitz matrix with first
/// column `t_0, ..., t_n`. Returns the solution of `T x = e_1` scaled so the
/// recursion's monic prediction vector is exposed: `x = a^{(n)} / E_n` where
/// `a^{(n)}_0 = 1`. Fails if a prediction error becomes non-positive.
pub(crate) fn levinson_unit_first(t: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = t.len() - 1;
    if t[0].re <= 0.0 {
        return Err(Error::SingularSystem);
    }
    let mut a = vec![Complex64::new(1.0, 0.0)];
    let mut e = t[0].re;
    for k in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=k {
            acc += a[j] * t[k + 1 - j];
        }
        let kappa = -acc / e;
        let mut next = vec![Complex64::new(0.0, 0.0); k + 2];
        for j in 0..=k + 1 {
            let prev = if j <= k {
                a[j]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let rev = if k + 1 - j <= k {
                a[k + 1 - j].conj()
            } else {
                Complex64::new(0.0, 0.0)
            };
            next[j] = prev + kappa * rev;
        }
        a = next;
        e *= 1.0 - kappa.norm_sqr();
        if e <= 0.0 || !e.is_finite() {
            return Err(Error::SingularSystem);
        }
    }
    Ok(a.into_iter().map(|c| c / e).collect())
}
