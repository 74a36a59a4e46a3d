//! Shared generators for randomized suites.
#![allow(dead_code)] // each test binary uses its own subset

use ssa_roots_core::poly::{ComplexPoly, RootCluster};
use ssa_roots_core::rng::SplitMix64;
use ssa_roots_core::series::{ModelTerm, SignalModel};
use ssa_roots_core::Complex64;

/// Random simple-root model: `count` distinct roots with moduli in
/// `[lo, hi)`, pairwise separation at least `min_sep`, and coefficient
/// moduli in `[0.5, 1.5)`.
pub fn random_simple_model(
    rng: &mut SplitMix64,
    count: usize,
    lo: f64,
    hi: f64,
    min_sep: f64,
) -> SignalModel {
    let roots = sample_roots(rng, count, lo, hi, min_sep);
    let terms = roots
        .into_iter()
        .map(|root| ModelTerm {
            root,
            poly: ComplexPoly::constant(rng.in_annulus(0.5, 1.5)),
        })
        .collect();
    SignalModel::new(terms).expect("sampled roots are distinct and nonzero")
}

/// Random model of difference dimension `d`, occasionally carrying one
/// multiplicity-2 root (as a degree-1 polynomial term).
pub fn random_model(
    rng: &mut SplitMix64,
    d: usize,
    lo: f64,
    hi: f64,
    min_sep: f64,
    allow_multiple: bool,
) -> SignalModel {
    let double = allow_multiple && d >= 2 && rng.next_f64() < 0.3;
    let n_roots = if double { d - 1 } else { d };
    let roots = sample_roots(rng, n_roots, lo, hi, min_sep);
    let mut terms = Vec::with_capacity(n_roots);
    for (i, root) in roots.into_iter().enumerate() {
        let poly = if double && i == 0 {
            ComplexPoly::from_coeffs(vec![rng.in_annulus(0.5, 1.5), rng.in_annulus(0.5, 1.5)])
        } else {
            ComplexPoly::constant(rng.in_annulus(0.5, 1.5))
        };
        terms.push(ModelTerm { root, poly });
    }
    SignalModel::new(terms).expect("sampled roots are distinct and nonzero")
}

pub fn sample_roots(
    rng: &mut SplitMix64,
    count: usize,
    lo: f64,
    hi: f64,
    min_sep: f64,
) -> Vec<Complex64> {
    let mut roots: Vec<Complex64> = Vec::with_capacity(count);
    while roots.len() < count {
        let z = rng.in_annulus(lo, hi);
        if roots.iter().all(|w| (w - z).norm() > min_sep) {
            roots.push(z);
        }
    }
    roots
}

/// Random monic polynomial with `d` roots in the annulus, occasionally with a
/// double root.
pub fn random_monic(rng: &mut SplitMix64, d: usize, lo: f64, hi: f64) -> ComplexPoly {
    let double = d >= 2 && rng.next_f64() < 0.25;
    let n_roots = if double { d - 1 } else { d };
    let roots = sample_roots(rng, n_roots, lo, hi, 0.05);
    let clusters: Vec<RootCluster> = roots
        .into_iter()
        .enumerate()
        .map(|(i, value)| RootCluster {
            value,
            multiplicity: if double && i == 0 { 2 } else { 1 },
        })
        .collect();
    ComplexPoly::from_roots(&clusters)
}

/// Greedy multiset match: every point of `a` claims its nearest unclaimed
/// point of `b`; returns the largest claim distance (infinite on size
/// mismatch).
pub fn multiset_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for &x in a {
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, &y) in b.iter().enumerate() {
            if !used[j] {
                let dd = (x - y).norm();
                if dd < best {
                    best = dd;
                    best_j = j;
                }
            }
        }
        used[best_j] = true;
        worst = worst.max(best);
    }
    worst
}
