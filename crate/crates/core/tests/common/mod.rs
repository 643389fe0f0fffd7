#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use steinitz_core::{contains_origin_interior, EuclideanPointSet, RandomSource, SphericalPointSet};

/// `count` points at colatitude `colat` about `e3`, evenly spaced in longitude.
pub fn ring(colat: f64, count: usize, phase: f64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|k| {
            let phi = phase + k as f64 * 2.0 * PI / count as f64;
            vec![colat.sin() * phi.cos(), colat.sin() * phi.sin(), colat.cos()]
        })
        .collect()
}

pub fn sphere_set(points: Vec<Vec<f64>>) -> SphericalPointSet {
    SphericalPointSet::new(points).unwrap()
}

pub fn euclid_set(points: &[&[f64]]) -> EuclideanPointSet {
    EuclideanPointSet::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
}

/// Gaussian points in `R^dim`, redrawn until the origin is interior.
pub fn interior_instance(dim: usize, n: usize, rng: &mut RandomSource) -> EuclideanPointSet {
    loop {
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.normal()).collect()).collect();
        let q = EuclideanPointSet::new(pts).unwrap();
        if contains_origin_interior(&q) {
            return q;
        }
    }
}

/// Rotation of `R^3` by `angle` about `e3`, as rows.
pub fn about_pole(angle: f64) -> Vec<Vec<f64>> {
    let (s, c) = angle.sin_cos();
    vec![vec![c, -s, 0.0], vec![s, c, 0.0], vec![0.0, 0.0, 1.0]]
}

pub fn apply(rows: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Distance from the origin to `conv(points)`, by solving the equality
/// constrained least-squares problem on every subset and keeping the
/// feasible ones. Only meant for a handful of points.
pub fn origin_distance_to_hull(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    assert!(n <= 10, "brute force over subsets");
    let dim = points[0].len();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = idx.len();
        // [PᵀP 1; 1ᵀ 0] [λ; μ] = [0; 1]
        let mut kkt = DMatrix::<f64>::zeros(k + 1, k + 1);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                kkt[(a, b)] = (0..dim).map(|t| points[i][t] * points[j][t]).sum();
            }
            kkt[(a, k)] = 1.0;
            kkt[(k, a)] = 1.0;
        }
        let mut rhs = DVector::<f64>::zeros(k + 1);
        rhs[k] = 1.0;
        let Some(sol) = kkt.lu().solve(&rhs) else { continue };
        let total: f64 = (0..k).map(|a| sol[a]).sum();
        if (total - 1.0).abs() > 1e-9 || (0..k).any(|a| sol[a] < -1e-12 || !sol[a].is_finite()) {
            continue;
        }
        let mut x = vec![0.0; dim];
        for (a, &i) in idx.iter().enumerate() {
            for t in 0..dim {
                x[t] += sol[a] * points[i][t];
            }
        }
        best = best.min(x.iter().map(|v| v * v).sum::<f64>().sqrt());
    }
    best
}
