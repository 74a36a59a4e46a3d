//! Dense complex polynomials with root extraction, clustering and an
//! approximate GCD. Coefficients are stored in ascending degree; the zero
//! polynomial is the empty coefficient sequence.

use alloc::{vec, vec::Vec};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// A complex polynomial `c_0 + c_1 z + ... + c_n z^n` with `c_n != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

/// A root value together with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl ComplexPoly {
    /// Builds a polynomial from ascending coefficients, trimming exact
    /// trailing zeros. An all-zero (or empty) input yields the zero polynomial.
    pub fn from_coeffs(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    /// `z - r`.
    pub fn linear(r: Complex64) -> Self {
        Self {
            coeffs: vec![-r, Complex64::new(1.0, 0.0)],
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] += b;
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// `order`-th formal derivative.
    pub fn derivative(&self, order: usize) -> Self {
        let mut cur = self.coeffs.clone();
        for _ in 0..order {
            if cur.len() <= 1 {
                return Self::zero();
            }
            cur = cur
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * Complex64::new(k as f64, 0.0))
                .collect();
        }
        Self::from_coeffs(cur)
    }

    /// The reversed-conjugated polynomial: for `B(z) = b_0 + ... + b_r z^r`
    /// this is `conj(b_0) z^r + ... + conj(b_r)`. Each nonzero root `z0` maps
    /// to `1 / conj(z0)`.
    pub fn star(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::from_coeffs(
            self.coeffs.iter().rev().map(|c| c.conj()).collect(),
        ))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(Self::from_coeffs(
            self.coeffs.iter().map(|&c| c / lead).collect(),
        ))
    }

    /// Monic polynomial with exactly the given roots and multiplicities.
    /// The empty set gives the constant 1.
    pub fn from_roots(clusters: &[RootCluster]) -> Self {
        let mut p = Self::one();
        for cl in clusters {
            for _ in 0..cl.multiplicity {
                p = p.mul(&Self::linear(cl.value));
            }
        }
        p
    }

    /// All roots with multiplicity, as raw eigenvalues of the balanced
    /// companion matrix. Needs degree >= 1.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        match self.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Err(Error::ConstantPolynomial),
            Some(_) => {
                let monic = self.monic()?;
                linalg::companion_eigenvalues(monic.coeffs())
            }
        }
    }

    /// Roots greedily merged into clusters. `cluster_tol` is the absolute
    /// merge distance; `None` uses `1e-6 * max(1, |root|)` per pair.
    pub fn root_clusters(&self, cluster_tol: Option<f64>) -> Result<Vec<RootCluster>> {
        Ok(cluster_points(&self.roots()?, cluster_tol))
    }

    /// Monic approximate greatest common divisor by root matching: roots of
    /// both polynomials are clustered jointly and common clusters are kept
    /// with their minimum multiplicity. Coprime inputs give the constant 1.
    pub fn gcd(&self, other: &Self, tol: f64) -> Result<Self> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::ZeroPolynomial),
            (true, false) => return other.monic(),
            (false, true) => return self.monic(),
            _ => {}
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Ok(Self::one());
        }
        let common = common_root_clusters(&[self.clone(), other.clone()], tol)?;
        Ok(Self::from_roots(&common))
    }
}

/// Greedy single-linkage clustering of complex points. A point joins a
/// cluster when it is within tolerance of any current member. With
/// `tol = None` the pairwise threshold is `1e-6 * max(1, (|a| + |b|) / 2)`.
pub fn cluster_points(points: &[Complex64], tol: Option<f64>) -> Vec<RootCluster> {
    let close = |a: Complex64, b: Complex64| -> bool {
        let d = (a - b).norm();
        match tol {
            Some(t) => d < t,
            None => d < 1e-6 * 1.0f64.max(0.5 * (a.norm() + b.norm())),
        }
    };
    let mut used = vec![false; points.len()];
    let mut clusters = Vec::new();
    for i in 0..points.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![points[i]];
        loop {
            let mut grew = false;
            for j in 0..points.len() {
                if !used[j] && members.iter().any(|&m| close(m, points[j])) {
                    used[j] = true;
                    members.push(points[j]);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        let centroid = members.iter().sum::<Complex64>() / members.len() as f64;
        clusters.push(RootCluster {
            value: centroid,
            multiplicity: members.len(),
        });
    }
    clusters
}

/// Common root clusters of a family of nonzero polynomials: clusters of the
/// first polynomial's roots that every other polynomial matches (within
/// `tol`), with the minimum multiplicity across the family.
pub fn common_root_clusters(polys: &[ComplexPoly], tol: f64) -> Result<Vec<RootCluster>> {
    let first = polys.first().ok_or(Error::EmptyBasis)?;
    if first.degree().is_none_or(|d| d == 0) {
        return Ok(Vec::new());
    }
    let base = first.root_clusters(Some(tol))?;
    let others: Vec<Vec<Complex64>> = polys[1..]
        .iter()
        .map(|p| match p.degree() {
            None => Err(Error::ZeroPolynomial),
            Some(0) => Ok(Vec::new()),
            Some(_) => p.roots(),
        })
        .collect::<Result<_>>()?;
    let mut common = Vec::new();
    for cl in base {
        let mut mult = cl.multiplicity;
        let mut sum = cl.value * cl.multiplicity as f64;
        let mut count = cl.multiplicity as f64;
        for roots in &others {
            let matched: Vec<Complex64> = roots
                .iter()
                .copied()
                .filter(|r| (r - cl.value).norm() < tol)
                .collect();
            mult = mult.min(matched.len());
            for r in &matched {
                sum += r;
                count += 1.0;
            }
        }
        if mult >= 1 {
            common.push(RootCluster {
                value: sum / count,
                multiplicity: mult,
            });
        }
    }
    Ok(common)
}

/// Symmetric Hausdorff distance between two finite point sets. Empty sets
/// are at distance 0 from each other and infinity from nonempty sets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one_sided = |xs: &[Complex64], ys: &[Complex64]| -> f64 {
        xs.iter()
            .map(|x| ys.iter().map(|y| (x - y).norm()).fold(f64::MAX, f64::min))
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(cs: &[(f64, f64)]) -> ComplexPoly {
        ComplexPoly::from_coeffs(cs.iter().map(|&(r, i)| c(r, i)).collect())
    }

    #[test]
    fn mul_difference_of_squares() {
        // (z-1)(z+1) = z^2 - 1
        let p = poly(&[(-1.0, 0.0), (1.0, 0.0)]);
        let q = poly(&[(1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(p.mul(&q), poly(&[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]));
    }

    #[test]
    fn mul_identity_and_square() {
        let p = poly(&[(2.0, 1.0), (0.0, 0.0), (3.0, 0.0)]);
        assert_eq!(p.mul(&ComplexPoly::one()), p);
        // (z-0.5)^2 = z^2 - z + 0.25
        let l = ComplexPoly::linear(c(0.5, 0.0));
        let sq = l.mul(&l);
        assert_eq!(sq, poly(&[(0.25, 0.0), (-1.0, 0.0), (1.0, 0.0)]));
    }

    #[test]
    fn roots_of_quadratic() {
        let p = poly(&[(-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let cl = p.root_clusters(None).unwrap();
        assert_eq!(cl.len(), 2);
        for r in [c(1.0, 0.0), c(-1.0, 0.0)] {
            assert!(cl
                .iter()
                .any(|x| (x.value - r).norm() < 1e-12 && x.multiplicity == 1));
        }
    }

    #[test]
    fn roots_of_unity_cofactor() {
        // (z^4 - 1)/(z - 1) = 1 + z + z^2 + z^3: fourth roots of unity except 1.
        let p = poly(&[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        let cl = p.root_clusters(None).unwrap();
        assert_eq!(cl.len(), 3);
        for r in [c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)] {
            assert!(cl
                .iter()
                .any(|x| (x.value - r).norm() < 1e-10 && x.multiplicity == 1));
        }
    }

    #[test]
    fn triple_root_clusters_to_one() {
        // A numerically split triple root scatters by roughly eps^(1/3), so
        // the merge radius has to sit above that scale.
        let l = ComplexPoly::linear(c(0.5, 0.0));
        let p = l.mul(&l).mul(&l);
        let cl = p.root_clusters(Some(1e-4)).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].multiplicity, 3);
        assert!((cl[0].value - c(0.5, 0.0)).norm() < 1e-4);
    }

    #[test]
    fn gcd_shared_linear_factor() {
        // gcd((z-1)(z-2), (z-1)(z-3)) = z - 1
        let p = ComplexPoly::linear(c(1.0, 0.0)).mul(&ComplexPoly::linear(c(2.0, 0.0)));
        let q = ComplexPoly::linear(c(1.0, 0.0)).mul(&ComplexPoly::linear(c(3.0, 0.0)));
        let g = p.gcd(&q, 1e-6).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!((g.eval(c(1.0, 0.0))).norm() < 1e-10);
    }

    #[test]
    fn gcd_self_is_monic_self() {
        let p = poly(&[(2.0, 0.0), (-3.0, 1.0), (2.0, 0.0)]);
        let g = p.gcd(&p, 1e-6).unwrap();
        let m = p.monic().unwrap();
        for (a, b) in g.coeffs().iter().zip(m.coeffs()) {
            assert!((a - b).norm() < 1e-8);
        }
    }

    #[test]
    fn gcd_roots_of_unity_polys() {
        // Common roots of the 6th and 4th roots of unity (excluding 1) are {-1}.
        let w = |l: usize| ComplexPoly::from_coeffs(vec![c(1.0, 0.0); l]);
        let g = w(6).gcd(&w(4), 1e-6).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!((g.eval(c(-1.0, 0.0))).norm() < 1e-10);
    }

    #[test]
    fn derivative_basics() {
        let p = ComplexPoly::monomial(3);
        assert_eq!(p.derivative(1), poly(&[(0.0, 0.0), (0.0, 0.0), (3.0, 0.0)]));
        assert_eq!(p.derivative(0), p);
        let q = poly(&[(0.25, 0.0), (-1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(q.derivative(2), poly(&[(2.0, 0.0)]));
    }

    #[test]
    fn star_by_definition() {
        // star(z - i): coefficients (-i, 1) -> (1, i), i.e. 1 + i z.
        let p = ComplexPoly::linear(c(0.0, 1.0));
        assert_eq!(p.star().unwrap(), poly(&[(1.0, 0.0), (0.0, 1.0)]));
        // Involution.
        let q = poly(&[(1.0, -2.0), (0.5, 0.0), (0.0, 3.0)]);
        assert_eq!(q.star().unwrap().star().unwrap(), q);
        // star(z - 0.5) = 1 - 0.5 z with root at 2.
        let r = ComplexPoly::linear(c(0.5, 0.0)).star().unwrap();
        assert!(r.eval(c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn from_roots_cases() {
        assert_eq!(
            ComplexPoly::from_roots(&[RootCluster {
                value: c(1.0, 0.0),
                multiplicity: 1
            }]),
            poly(&[(-1.0, 0.0), (1.0, 0.0)])
        );
        assert_eq!(ComplexPoly::from_roots(&[]), ComplexPoly::one());
        // Conjugate pair at modulus 0.9, angle +-2pi/8: real coefficients.
        let a = Complex64::from_polar(0.9, core::f64::consts::TAU / 8.0);
        let p = ComplexPoly::from_roots(&[
            RootCluster {
                value: a,
                multiplicity: 1,
            },
            RootCluster {
                value: a.conj(),
                multiplicity: 1,
            },
        ]);
        let want = poly(&[
            (0.81, 0.0),
            (-1.8 * (core::f64::consts::PI / 4.0).cos(), 0.0),
            (1.0, 0.0),
        ]);
        for (x, y) in p.coeffs().iter().zip(want.coeffs()) {
            assert!((x - y).norm() < 1e-12);
            assert!(x.im.abs() < 1e-15);
        }
    }

    #[test]
    fn eval_horner() {
        let p = poly(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        let z = c(2.0, -1.0);
        let want = c(1.0, 0.0) + c(2.0, 0.0) * z + c(3.0, 0.0) * z * z;
        assert!((p.eval(z) - want).norm() < 1e-14);
    }
}
