//! Weight normalization, critical-circle quantities, classification of
//! extraneous roots into general and spurious, and empirical checks of the
//! asymptotic distribution laws.

use alloc::vec::Vec;
use num_complex::Complex64;
// f64 math comes from num-traits (libm) when no std is in the crate graph;
// builds that do link std resolve the methods inherently instead.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::minnorm::extraneous_poly;
use crate::poly::{cluster_points, ComplexPoly, RootCluster};

/// The weight polynomial with every root reflected into the closed unit
/// disk: roots with `|lambda| > 1` are replaced by `conj(1/lambda)`, and
/// coincident images are merged. `|P(z)|^2` and `|C(z)|^2` differ only by a
/// positive constant on the circle, so both weights share the same
/// orthogonal family.
#[derive(Debug, Clone)]
pub struct NormalizedWeight {
    /// Monic, all roots in the closed unit disk.
    pub c: ComplexPoly,
    /// Distinct roots with multiplicities, leading roots first; among the
    /// leading roots those of maximal multiplicity come first.
    pub clusters: Vec<RootCluster>,
    /// Critical radius: the largest root modulus.
    pub rho: f64,
    /// Indices (into `clusters`) of the roots on the critical circle.
    pub leading: Vec<usize>,
    /// Count of leading roots with the maximal multiplicity.
    pub ell: usize,
    /// Count of leading roots.
    pub u: usize,
    /// Maximal multiplicity among the leading roots.
    pub max_mult: usize,
}

const LEADING_TOL: f64 = 1e-9;

/// Reflects the roots of `P` into the closed unit disk, glues coincident
/// images and computes the critical-circle bookkeeping.
pub fn normalize_weight(p: &ComplexPoly, cluster_tol: Option<f64>) -> Result<NormalizedWeight> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let reflected: Vec<Complex64> = p
        .roots()?
        .into_iter()
        .map(|z| if z.norm() > 1.0 { z.finv().conj() } else { z })
        .collect();
    let mut clusters = cluster_points(&reflected, cluster_tol);
    let rho = clusters.iter().map(|c| c.value.norm()).fold(0.0, f64::max);
    let max_mult_leading = clusters
        .iter()
        .filter(|c| (c.value.norm() - rho).abs() < LEADING_TOL)
        .map(|c| c.multiplicity)
        .max()
        .unwrap_or(0);
    // Order: maximal-multiplicity leading roots, other leading roots, interior
    // roots; each group by argument for determinism.
    let group = |c: &RootCluster| -> usize {
        if (c.value.norm() - rho).abs() < LEADING_TOL {
            if c.multiplicity == max_mult_leading {
                0
            } else {
                1
            }
        } else {
            2
        }
    };
    clusters.sort_by(|a, b| {
        (group(a), a.value.arg())
            .partial_cmp(&(group(b), b.value.arg()))
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let u = clusters.iter().filter(|c| group(c) < 2).count();
    let ell = clusters.iter().filter(|c| group(c) == 0).count();
    let leading = (0..u).collect();
    Ok(NormalizedWeight {
        c: ComplexPoly::from_roots(&clusters),
        clusters,
        rho,
        leading,
        ell,
        u,
        max_mult: max_mult_leading,
    })
}

impl NormalizedWeight {
    /// Degree of the normalized weight polynomial (equals the original degree).
    pub fn degree(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    /// The classification radius used by default: roots with modulus at most
    /// `rho - 0.15 rho` count as spurious.
    pub fn default_delta(&self) -> f64 {
        0.15 * self.rho
    }

    /// Extraneous polynomial of this weight for the given degree.
    pub fn extraneous(&self, n: usize) -> Result<ComplexPoly> {
        Ok(extraneous_poly(&self.c, n)?.h)
    }
}

/// Partition of extraneous roots into the mass near the critical circle
/// (general) and the bounded set strictly inside it (spurious).
#[derive(Debug, Clone)]
pub struct RootDiagnostics {
    pub general: Vec<Complex64>,
    pub spurious: Vec<Complex64>,
    pub delta: f64,
    /// Adjacent angular gaps among the general roots, sorted by argument
    /// (circular, so as many gaps as roots).
    pub gap_stats: Vec<f64>,
    /// Mean modulus of the general roots.
    pub mean_modulus: f64,
}

/// Labels roots with `|z| <= rho - delta` spurious, the rest general, and
/// gathers gap and modulus statistics over the general roots.
pub fn classify_roots(roots: &[Complex64], w: &NormalizedWeight, delta: f64) -> RootDiagnostics {
    let cut = w.rho - delta;
    let mut general: Vec<Complex64> = Vec::new();
    let mut spurious = Vec::new();
    for &z in roots {
        if z.norm() <= cut {
            spurious.push(z);
        } else {
            general.push(z);
        }
    }
    general.sort_by(|a, b| {
        a.arg()
            .partial_cmp(&b.arg())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut gap_stats = Vec::new();
    if general.len() >= 2 {
        for i in 0..general.len() {
            let a = general[i].arg();
            let b = general[(i + 1) % general.len()].arg();
            let mut gap = b - a;
            if i + 1 == general.len() {
                gap += core::f64::consts::TAU;
            }
            gap_stats.push(gap);
        }
    }
    let mean_modulus = if general.is_empty() {
        0.0
    } else {
        general.iter().map(|z| z.norm()).sum::<f64>() / general.len() as f64
    };
    RootDiagnostics {
        general,
        spurious,
        delta,
        gap_stats,
        mean_modulus,
    }
}

/// The rational function whose zeros attract the spurious roots. The branch
/// depends on whether the critical radius is strictly inside the circle.
///
/// For `rho < 1` the sum runs over the maximal-multiplicity leading roots
/// with `M`-th derivatives of `C`; for `rho = 1` over all leading roots with
/// multiplicity-specific derivatives.
pub fn g_function(w: &NormalizedWeight, n: usize, z: Complex64) -> Result<Complex64> {
    let d = w.degree();
    let c_star = w.c.star().map_err(|_| Error::ZeroPolynomial)?;
    let on_circle = (w.rho - 1.0).abs() < LEADING_TOL;
    let mut acc = Complex64::new(0.0, 0.0);
    if !on_circle {
        let m = w.max_mult;
        let c_deriv = w.c.derivative(m);
        for idx in 0..w.ell {
            let a = w.clusters[idx].value;
            if (z - a).norm() < 1e-12 {
                return Err(Error::PoleEvaluation);
            }
            let power = n as i32 - m as i32 + d as i32 + 1;
            acc += a.powi(power) * c_star.eval(a) / ((z - a) * c_deriv.eval(a));
        }
    } else {
        for idx in 0..w.u {
            let a = w.clusters[idx].value;
            let nu = w.clusters[idx].multiplicity;
            if (z - a).norm() < 1e-12 {
                return Err(Error::PoleEvaluation);
            }
            let sign = if nu.is_multiple_of(2) { 1.0 } else { -1.0 };
            let num =
                a.powi(n as i32 + d as i32 + 1) * sign * nu as f64 * c_star.derivative(nu).eval(a);
            acc += num / ((z - a) * w.c.derivative(nu).eval(a));
        }
    }
    Ok(acc)
}

/// For each `n`, the difference between the mean general-root modulus and
/// the first-order law `rho (1 + M log(n)/n)` (interior case) or
/// `1 + log(n)/n` (circle case). Residuals are reported as data; the law's
/// unspecified lower-order terms dominate at practical `n`, so no sign is
/// asserted here.
pub fn modulus_law_residual(w: &NormalizedWeight, n_values: &[usize]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n_values.len());
    let on_circle = (w.rho - 1.0).abs() < LEADING_TOL;
    for &n in n_values {
        if n < 4 {
            return Err(Error::TooFewRoots { count: n });
        }
        let h = w.extraneous(n)?;
        let diag = classify_roots(&h.roots()?, w, w.default_delta());
        let x = (n as f64).ln() / n as f64;
        let law = if on_circle {
            1.0 + x
        } else {
            w.rho * (1.0 + w.max_mult as f64 * x)
        };
        out.push(diag.mean_modulus - law);
    }
    Ok(out)
}

/// Largest deviation of adjacent angular gaps from `2 pi / n` among the given
/// roots, skipping any gap whose arc contains one of the excluded angles
/// (vicinities of leading roots, where the equidistribution law is silent).
pub fn angular_equidistribution(
    roots: &[Complex64],
    n: usize,
    excluded_angles: &[f64],
) -> Result<f64> {
    if roots.len() < 3 {
        return Err(Error::TooFewRoots { count: roots.len() });
    }
    let tau = core::f64::consts::TAU;
    let wrap = |x: f64| -> f64 {
        let r = x % tau;
        if r < 0.0 {
            r + tau
        } else {
            r
        }
    };
    let mut angles: Vec<f64> = roots.iter().map(|z| wrap(z.arg())).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    let excluded: Vec<f64> = excluded_angles.iter().map(|&a| wrap(a)).collect();
    let target = tau / n as f64;
    let mut worst = 0.0f64;
    for i in 0..angles.len() {
        let start = angles[i];
        let end = if i + 1 == angles.len() {
            angles[0] + tau
        } else {
            angles[i + 1]
        };
        let contains_excluded = excluded
            .iter()
            .any(|&e| (e >= start && e <= end) || (e + tau >= start && e + tau <= end));
        if contains_excluded {
            continue;
        }
        worst = worst.max((end - start - target).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reflection_glues_pairs() {
        // Roots {0.5, 2}: 2 reflects onto 0.5, giving (z - 0.5)^2.
        let p = ComplexPoly::linear(c(0.5, 0.0)).mul(&ComplexPoly::linear(c(2.0, 0.0)));
        let w = normalize_weight(&p, Some(1e-6)).unwrap();
        assert_eq!(w.clusters.len(), 1);
        assert_eq!(w.clusters[0].multiplicity, 2);
        assert!((w.rho - 0.5).abs() < 1e-9);
        assert_eq!((w.ell, w.u, w.max_mult), (1, 1, 2));

        // |P|^2 / |C|^2 constant on the circle.
        let mut ratios = Vec::new();
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, core::f64::consts::TAU * k as f64 / 64.0);
            ratios.push(p.eval(z).norm_sqr() / w.c.eval(z).norm_sqr());
        }
        let r0 = ratios[0];
        for r in ratios {
            assert!((r / r0 - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn four_leading_roots() {
        let tau = core::f64::consts::TAU;
        let roots = [
            Complex64::from_polar(0.9, tau / 8.0),
            Complex64::from_polar(0.9, -tau / 8.0),
            Complex64::from_polar(0.9, tau * (0.25f64).sin()),
            Complex64::from_polar(0.9, -tau * (0.25f64).sin()),
        ];
        let p = ComplexPoly::from_roots(&roots.map(|value| RootCluster {
            value,
            multiplicity: 1,
        }));
        let w = normalize_weight(&p, None).unwrap();
        assert!((w.rho - 0.9).abs() < 1e-9);
        assert_eq!((w.ell, w.u, w.max_mult), (4, 4, 1));
    }

    #[test]
    fn triple_unit_root() {
        // The computed triple root splits at the eps^(1/3) scale and the
        // reflection pulls the outside pair inward, so the merged centroid
        // sits within ~1e-5 of the circle.
        let one = ComplexPoly::linear(c(1.0, 0.0));
        let p = one.mul(&one).mul(&one);
        let w = normalize_weight(&p, Some(1e-4)).unwrap();
        assert!((w.rho - 1.0).abs() < 1e-4);
        assert_eq!((w.u, w.max_mult), (1, 3));
    }

    #[test]
    fn normalization_is_idempotent() {
        let p = ComplexPoly::from_roots(&[
            RootCluster {
                value: c(0.4, 0.5),
                multiplicity: 1,
            },
            RootCluster {
                value: c(-0.7, 0.1),
                multiplicity: 2,
            },
        ]);
        let w = normalize_weight(&p, None).unwrap();
        let w2 = normalize_weight(&w.c, None).unwrap();
        let scale = w.c.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (a, b) in w.c.coeffs().iter().zip(w2.c.coeffs()) {
            assert!((a - b).norm() < 1e-7 * scale);
        }
    }

    #[test]
    fn classification_counts() {
        // Single leading root (ell = 1): no spurious roots expected at all.
        let p = ComplexPoly::linear(c(1.0, 0.0));
        let w = normalize_weight(&p, None).unwrap();
        let h = w.extraneous(40).unwrap();
        let diag = classify_roots(&h.roots().unwrap(), &w, 0.15);
        assert_eq!(diag.spurious.len(), 0);
        assert_eq!(diag.general.len(), 40);
        assert!(diag.mean_modulus < 1.0);
    }

    #[test]
    fn g_function_branches() {
        // ell = 1, rho < 1: a single pole term, no zeros.
        let p = ComplexPoly::linear(c(0.5, 0.0));
        let w = normalize_weight(&p, None).unwrap();
        let g1 = g_function(&w, 10, c(0.1, 0.0)).unwrap();
        let g2 = g_function(&w, 10, c(-0.1, 0.2)).unwrap();
        assert!(g1.norm() > 0.0 && g2.norm() > 0.0);
        assert!(matches!(
            g_function(&w, 10, c(0.5, 0.0)),
            Err(Error::PoleEvaluation)
        ));

        // Real-coefficient weight: G_n(conj z) = conj(G_n(z)).
        let tau = core::f64::consts::TAU;
        let p2 = ComplexPoly::from_roots(&[
            RootCluster {
                value: Complex64::from_polar(0.8, tau / 6.0),
                multiplicity: 1,
            },
            RootCluster {
                value: Complex64::from_polar(0.8, -tau / 6.0),
                multiplicity: 1,
            },
        ]);
        let w2 = normalize_weight(&p2, None).unwrap();
        let z = c(0.3, 0.45);
        let a = g_function(&w2, 17, z).unwrap();
        let b = g_function(&w2, 17, z.conj()).unwrap();
        assert!((a.conj() - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn attractor_pulls_spurious_roots() {
        // Four leading roots: spurious roots exist and sit near the zeros of
        // the attractor function, so it is much smaller there than at the
        // general roots (which crowd its poles).
        let tau = core::f64::consts::TAU;
        let p = ComplexPoly::from_roots(&[
            RootCluster {
                value: Complex64::from_polar(0.9, tau / 8.0),
                multiplicity: 1,
            },
            RootCluster {
                value: Complex64::from_polar(0.9, -tau / 8.0),
                multiplicity: 1,
            },
            RootCluster {
                value: Complex64::from_polar(0.9, tau * (0.25f64).sin()),
                multiplicity: 1,
            },
            RootCluster {
                value: Complex64::from_polar(0.9, -tau * (0.25f64).sin()),
                multiplicity: 1,
            },
        ]);
        let w = normalize_weight(&p, None).unwrap();
        for n in [15usize, 25] {
            let h = w.extraneous(n).unwrap();
            let diag = classify_roots(&h.roots().unwrap(), &w, w.default_delta());
            assert!(!diag.spurious.is_empty());
            let worst_spurious = diag
                .spurious
                .iter()
                .map(|&z| g_function(&w, n, z).unwrap().norm())
                .fold(0.0, f64::max);
            let best_general = diag
                .general
                .iter()
                .map(|&z| g_function(&w, n, z).unwrap().norm())
                .fold(f64::MAX, f64::min);
            assert!(
                worst_spurious < best_general,
                "n {n}: {worst_spurious} vs {best_general}"
            );
        }
    }

    #[test]
    fn modulus_residuals_bounded_for_interior_weight() {
        let p = ComplexPoly::linear(c(0.5, 0.0));
        let w = normalize_weight(&p, None).unwrap();
        let res = modulus_law_residual(&w, &[20, 40, 80]).unwrap();
        for (r, n) in res.iter().zip([20.0f64, 40.0, 80.0]) {
            assert!((r * n).abs() < 4.0, "residual*n = {}", r * n);
        }
    }

    #[test]
    fn circle_weight_mean_modulus_stays_below_one() {
        // For the unit-root weight the first-order law overshoots 1 while the
        // roots stay inside; the residual is recorded, its sign not asserted.
        let p = ComplexPoly::linear(c(1.0, 0.0));
        let w = normalize_weight(&p, None).unwrap();
        let res = modulus_law_residual(&w, &[16, 32]).unwrap();
        for r in res {
            assert!(r < 0.0);
        }
        let h = w.extraneous(32).unwrap();
        let diag = classify_roots(&h.roots().unwrap(), &w, w.default_delta());
        assert!(diag.mean_modulus < 1.0);
    }

    #[test]
    fn multiplicity_pushes_general_roots_outward() {
        // The multiplicity factor in the modulus law shows up as a uniformly
        // larger mean modulus for the squared weight.
        let single = normalize_weight(&ComplexPoly::linear(c(0.9, 0.0)), None).unwrap();
        let l = ComplexPoly::linear(c(0.9, 0.0));
        let double = normalize_weight(&l.mul(&l), Some(1e-4)).unwrap();
        for n in [32usize, 64, 128] {
            let m1 = classify_roots(
                &single.extraneous(n).unwrap().roots().unwrap(),
                &single,
                single.default_delta(),
            )
            .mean_modulus;
            let m2 = classify_roots(
                &double.extraneous(n).unwrap().roots().unwrap(),
                &double,
                double.default_delta(),
            )
            .mean_modulus;
            assert!(m2 > m1, "n={n}: {m2} <= {m1}");
        }
    }

    #[test]
    fn gap_errors_shrink_quadratically() {
        let p = ComplexPoly::linear(c(1.0, 0.0));
        let w = normalize_weight(&p, None).unwrap();
        let err = |n: usize| -> f64 {
            let h = w.extraneous(n).unwrap();
            angular_equidistribution(&h.roots().unwrap(), n, &[0.0]).unwrap()
        };
        let e64 = err(64);
        let e128 = err(128);
        let ratio = e64 / e128;
        assert!((2.5..=6.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn symmetric_small_case() {
        // Three roots of a real weight: conjugation symmetry makes the two
        // gaps adjacent to the real root equal. At n = 3 all roots sit well
        // inside the circle, so classify with a wide annulus.
        let p = ComplexPoly::linear(c(1.0, 0.0));
        let w = normalize_weight(&p, None).unwrap();
        let h = w.extraneous(3).unwrap();
        let roots = h.roots().unwrap();
        let diag = classify_roots(&roots, &w, 0.9);
        assert_eq!(diag.general.len(), 3);
        let mut sorted = diag.gap_stats.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((sorted[0] - sorted[1]).abs() < 1e-9 || (sorted[1] - sorted[2]).abs() < 1e-9);
    }

    #[test]
    fn too_few_roots_rejected() {
        assert!(matches!(
            angular_equidistribution(&[c(1.0, 0.0), c(-1.0, 0.0)], 2, &[]),
            Err(Error::TooFewRoots { .. })
        ));
    }
}
