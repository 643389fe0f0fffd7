//! Monte-Carlo and brute-force checks that share no scoring code with the
//! selectors, so they can be used to validate them.
//!
//! Containment radii are estimated from above as the minimum support over
//! random directions. Caps about an axis are estimated the same way in the
//! tangent chart at the axis, where the support function of the projected
//! spherical hull has a closed form in terms of the generators.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::euclid::EuclideanPointSet;
use crate::linalg::{dot, norm, normalized, tangent_basis};
use crate::sphere::{Cap, SphericalHull, SphericalPointSet};
use std::f64::consts::{FRAC_PI_2, PI};

/// Largest instance accepted by [`exhaustive_best_subset`].
pub const EXHAUSTIVE_MAX_POINTS: usize = 12;

/// Directions used by [`exhaustive_best_subset`].
pub const EXHAUSTIVE_DIRECTIONS: usize = 10_000;

/// Seed of the direction sample used by [`exhaustive_best_subset`].
pub const EXHAUSTIVE_SEED: u64 = 0x5eed;

const TIE_TOLERANCE: f64 = 1e-12;

/// Subsets within this score of the best sampled score are rescored.
const REFINE_WINDOW: f64 = 5e-3;
const REFINE_SUBSETS: usize = 32;
/// Sampled directions each refinement starts from.
const REFINE_STARTS: usize = 8;
/// Angle between refinement starts.
const START_SEPARATION: f64 = 0.05;

/// Smoothing levels `β = 10^k / max ‖v‖` for `k = FIRST_STAGE..=LAST_STAGE`.
/// Smoothing much wider than the direction sample spacing would merge the
/// basins of neighbouring facets.
const FIRST_STAGE: i32 = 3;
const LAST_STAGE: i32 = 10;
const NEWTON_STEPS: usize = 60;
/// Longest chart step, in radians, of a single Newton iteration.
const MAX_STEP: f64 = 0.25;

/// Below this, a generator counts as lying on the equator of the axis.
const EQUATOR_TOLERANCE: f64 = 1e-12;

/// Seeded ChaCha8 stream. The same `(seed, stream)` pair produces the same
/// samples on every platform.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    /// Uniform in `(0, 1]`.
    pub fn open_unit(&mut self) -> f64 {
        1.0 - self.rng.random::<f64>()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Uniform on the unit sphere of `R^dim`.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| self.normal()).collect();
            if let Some(u) = normalized(&v) {
                return u;
            }
        }
    }

    /// A uniformly random orthonormal basis of `R^dim`, as rows.
    pub fn orthonormal_frame(&mut self, dim: usize) -> Vec<Vec<f64>> {
        let mut frame: Vec<Vec<f64>> = Vec::with_capacity(dim);
        while frame.len() < dim {
            let mut v: Vec<f64> = (0..dim).map(|_| self.normal()).collect();
            for f in &frame {
                let s = dot(&v, f);
                v.iter_mut().zip(f).for_each(|(x, y)| *x -= s * y);
            }
            if let Some(u) = normalized(&v).filter(|_| dot(&v, &v) > 1e-6) {
                frame.push(u);
            }
        }
        frame
    }

    /// Uniform (by surface area) in the cap.
    pub fn cap_point(&mut self, cap: &Cap) -> Vec<f64> {
        let basis = tangent_basis(cap.axis());
        self.cap_point_with_basis(cap, &basis)
    }

    fn cap_point_with_basis(&mut self, cap: &Cap, basis: &[Vec<f64>]) -> Vec<f64> {
        let d = basis.len();
        let rho = cap.rho();
        // Colatitude has density ∝ sin^(d−1) on [0, ρ].
        let theta = if d == 2 {
            let (lo, hi) = (rho.cos(), 1.0);
            self.uniform(lo, hi).clamp(-1.0, 1.0).acos()
        } else {
            let peak = rho.min(FRAC_PI_2).sin().max(f64::MIN_POSITIVE);
            loop {
                let t = self.uniform(0.0, rho);
                if self.rng.random::<f64>() * peak.powi(d as i32 - 1) <= t.sin().powi(d as i32 - 1) {
                    break t;
                }
            }
        };
        let w = self.unit_vector(d);
        let (s, c) = theta.sin_cos();
        let mut x: Vec<f64> = cap.axis().iter().map(|a| c * a).collect();
        for (wi, t) in w.iter().zip(basis) {
            x.iter_mut().zip(t).for_each(|(xi, ti)| *xi += s * wi * ti);
        }
        x
    }
}

/// `min_u max_q ⟨q, u⟩` over `n_dirs` random unit directions: an upper
/// bound on the containment radius of `Q` that converges from above.
pub fn mc_containment_radius(q: &EuclideanPointSet, n_dirs: usize, rng: &mut RandomSource) -> f64 {
    let dirs: Vec<Vec<f64>> = (0..n_dirs.max(1)).map(|_| rng.unit_vector(q.dim())).collect();
    mc_containment_radius_over(q, &dirs)
}

/// As [`mc_containment_radius`], over the given directions.
pub fn mc_containment_radius_over(q: &EuclideanPointSet, dirs: &[Vec<f64>]) -> f64 {
    dirs.iter().map(|u| support(q.points(), u)).fold(f64::INFINITY, f64::min)
}

/// [`mc_containment_radius`] followed by a smoothed Newton descent from the
/// best few well-separated directions. Every evaluated direction still
/// bounds the radius from above, but the error no longer decays only like
/// the spacing of the uniform sample.
pub fn mc_containment_radius_refined(q: &EuclideanPointSet, n_dirs: usize, rng: &mut RandomSource) -> f64 {
    let dirs: Vec<Vec<f64>> = (0..n_dirs.max(1)).map(|_| rng.unit_vector(q.dim())).collect();
    let values: Vec<f64> = dirs.iter().map(|u| support(q.points(), u)).collect();
    let f = |u: &[f64]| support(q.points(), u);
    lowest(&values, &dirs, REFINE_STARTS)
        .into_iter()
        .map(|i| descend(q.points(), &dirs[i], values[i], &f))
        .fold(f64::INFINITY, f64::min)
}

fn support(points: &[Vec<f64>], u: &[f64]) -> f64 {
    points.iter().map(|p| dot(p, u)).fold(f64::NEG_INFINITY, f64::max)
}

/// Indices of up to `k` small finite values whose directions are pairwise
/// at least [`START_SEPARATION`] apart, smallest first, so that separate
/// local minima each get a start.
fn lowest(values: &[f64], dirs: &[Vec<f64>], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_finite()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let min_cos = START_SEPARATION.cos();
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for &i in &idx {
        if chosen.len() == k {
            break;
        }
        if chosen.iter().all(|&j| dot(&dirs[i], &dirs[j]) < min_cos) {
            chosen.push(i);
        }
    }
    chosen
}

/// Local descent from `start` for the support function of `vectors`,
/// `u ↦ max_i ⟨v_i, u⟩` on the unit sphere. Newton steps on the smoothed
/// `(1/β) log Σ exp(β ⟨v_i, u⟩)` are taken for increasing `β`, and after
/// each stage the direction reached is scored with `eval`, which is never
/// below the support it stands for. Returns the smallest score seen.
fn descend(vectors: &[Vec<f64>], start: &[f64], start_value: f64, eval: &dyn Fn(&[f64]) -> f64) -> f64 {
    let scale = vectors.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if vectors.is_empty() || !(scale > 0.0) {
        return start_value;
    }
    let mut u = start.to_vec();
    let mut best = start_value;
    for stage in FIRST_STAGE..=LAST_STAGE {
        let beta = 10f64.powi(stage) / scale;
        for _ in 0..NEWTON_STEPS {
            match newton_step(vectors, &u, beta) {
                Some(next) => u = next,
                None => break,
            }
        }
        best = best.min(eval(&u));
    }
    best
}

fn smoothed(vectors: &[Vec<f64>], u: &[f64], beta: f64) -> f64 {
    let s: Vec<f64> = vectors.iter().map(|v| dot(v, u)).collect();
    let m = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + s.iter().map(|x| (beta * (x - m)).exp()).sum::<f64>().ln() / beta
}

/// One damped Newton step in the tangent chart at `u`; `None` once the
/// step no longer decreases the smoothed support.
fn newton_step(vectors: &[Vec<f64>], u: &[f64], beta: f64) -> Option<Vec<f64>> {
    let basis = tangent_basis(u);
    let k = basis.len();
    let s: Vec<f64> = vectors.iter().map(|v| dot(v, u)).collect();
    let m = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut w: Vec<f64> = s.iter().map(|x| (beta * (x - m)).exp()).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    // Weighted mean and covariance of the vectors in chart coordinates.
    let chart: Vec<Vec<f64>> = vectors.iter().map(|v| basis.iter().map(|t| dot(v, t)).collect()).collect();
    let mean: Vec<f64> = (0..k).map(|a| chart.iter().zip(&w).map(|(c, wi)| wi * c[a]).sum()).collect();
    let radial: f64 = s.iter().zip(&w).map(|(x, wi)| wi * x).sum();
    let mut hess = DMatrix::<f64>::zeros(k, k);
    for (c, wi) in chart.iter().zip(&w) {
        for a in 0..k {
            for b in 0..k {
                hess[(a, b)] += beta * wi * (c[a] - mean[a]) * (c[b] - mean[b]);
            }
        }
    }
    // Moving along the sphere pulls every value back by ⟨v, u⟩ at second order.
    for a in 0..k {
        hess[(a, a)] -= radial;
    }
    let grad = DVector::from_vec(mean);
    if grad.norm() <= 1e-15 * beta.recip().max(1.0) {
        return None;
    }
    // Where the smoothed support is not convex in the chart, lift the
    // spectrum so its bottom sits at the curvature of the sphere itself.
    let lowest_eigen = hess.clone().symmetric_eigenvalues().min();
    if lowest_eigen < radial.abs() * 1e-3 {
        for a in 0..k {
            hess[(a, a)] += radial.abs() - lowest_eigen;
        }
    }
    let mut step = -hess.cholesky()?.solve(&grad);
    let length = step.norm();
    if length > MAX_STEP {
        step *= MAX_STEP / length;
    }
    let current = smoothed(vectors, u, beta);
    let slope = grad.dot(&step);
    let mut t = 1.0;
    while t > 1e-12 {
        let moved: Vec<f64> =
            (0..u.len()).map(|j| u[j] + t * (0..k).map(|a| step[a] * basis[a][j]).sum::<f64>()).collect();
        let candidate = normalized(&moved)?;
        if smoothed(vectors, &candidate, beta) <= current + 1e-4 * t * slope {
            return (candidate != u).then_some(candidate);
        }
        t *= 0.5;
    }
    None
}

/// Samples `n_samples` points uniformly in `cap` and checks each for
/// membership in `sconv(C)`. `false` refutes containment; `true` is only
/// evidence for it.
pub fn mc_cap_contained(c: &SphericalPointSet, cap: &Cap, n_samples: usize, rng: &mut RandomSource) -> bool {
    let hull = SphericalHull::new(c);
    if hull.is_full_sphere() {
        return true;
    }
    let basis = tangent_basis(cap.axis());
    (0..n_samples.max(1)).all(|_| hull.contains(&rng.cap_point_with_basis(cap, &basis)))
}

/// Instances and scores for [`exhaustive_best_subset`].
#[derive(Debug, Clone, Copy)]
pub enum SubsetScorer<'a> {
    /// Estimated containment radius of a Euclidean subset.
    EuclidRadius(&'a EuclideanPointSet),
    /// Estimated largest cap about the axis inside the spherical hull.
    CapAboutAxis(&'a SphericalPointSet, &'a [f64]),
}

/// Per-direction reach of a subset: the support of the set (Euclidean) or of
/// its projection to the tangent chart at the axis (spherical).
enum Reach {
    Euclid {
        points: Vec<Vec<f64>>,
    },
    /// `along[i]` is the axis component of generator `i`, `chart[i]` its
    /// components along the tangent basis.
    Cap {
        along: Vec<f64>,
        chart: Vec<Vec<f64>>,
    },
}

impl Reach {
    fn len(&self) -> usize {
        match self {
            Reach::Euclid { points } => points.len(),
            Reach::Cap { along, .. } => along.len(),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Reach::Euclid { points } => points[0].len(),
            Reach::Cap { chart, .. } => chart[0].len(),
        }
    }

    /// Per-point values in direction `w`, from which [`Reach::of`] is read.
    fn profile(&self, w: &[f64]) -> Vec<f64> {
        match self {
            Reach::Euclid { points } => points.iter().map(|p| dot(p, w)).collect(),
            Reach::Cap { chart, .. } => chart.iter().map(|p| dot(p, w)).collect(),
        }
    }

    fn of(&self, profile: &[f64], subset: &[usize]) -> f64 {
        match self {
            Reach::Euclid { .. } => subset.iter().map(|&i| profile[i]).fold(f64::NEG_INFINITY, f64::max),
            Reach::Cap { along, .. } => projected_support(along, profile, subset),
        }
    }

    /// Vectors whose support stands in for the reach of `subset` wherever
    /// that reach is finite.
    fn linear(&self, subset: &[usize]) -> Vec<Vec<f64>> {
        match self {
            Reach::Euclid { points } => subset.iter().map(|&i| points[i].clone()).collect(),
            Reach::Cap { along, chart } => subset
                .iter()
                .filter(|&&i| along[i] > EQUATOR_TOLERANCE)
                .map(|&i| chart[i].iter().map(|x| x / along[i]).collect())
                .collect(),
        }
    }

    /// Converts the smallest reach over directions into the score.
    fn score(&self, reach: f64) -> f64 {
        match self {
            Reach::Euclid { .. } => reach.max(0.0),
            Reach::Cap { .. } if reach == f64::INFINITY => PI,
            Reach::Cap { .. } if reach <= 0.0 => 0.0,
            Reach::Cap { .. } => reach.atan(),
        }
    }
}

/// Best subset of size at most `k` under the Monte-Carlo score, with the
/// default direction sample.
pub fn exhaustive_best_subset(scorer: SubsetScorer<'_>, k: usize) -> Result<(Vec<usize>, f64)> {
    let mut rng = RandomSource::new(EXHAUSTIVE_SEED, 0);
    exhaustive_best_subset_with(scorer, k, EXHAUSTIVE_DIRECTIONS, &mut rng)
}

/// Enumerates every subset of size at most `k` and scores all of them on a
/// common sample of `n_dirs` directions. The subsets scoring close to the
/// best are then rescored by a smoothed Newton descent from their best
/// sampled directions. Ties within `1e-12` go to the lexicographically
/// smallest index list.
pub fn exhaustive_best_subset_with(
    scorer: SubsetScorer<'_>,
    k: usize,
    n_dirs: usize,
    rng: &mut RandomSource,
) -> Result<(Vec<usize>, f64)> {
    let reach = match scorer {
        SubsetScorer::EuclidRadius(q) => Reach::Euclid { points: q.points().to_vec() },
        SubsetScorer::CapAboutAxis(c, axis) => {
            if axis.len() != c.ambient_dim() {
                return Err(Error::DimensionMismatch { expected: c.ambient_dim(), found: axis.len() });
            }
            let axis = normalized(axis).ok_or_else(|| Error::invalid("axis must be nonzero"))?;
            let basis = tangent_basis(&axis);
            Reach::Cap {
                along: c.points().iter().map(|p| dot(p, &axis)).collect(),
                chart: c.points().iter().map(|p| basis.iter().map(|t| dot(p, t)).collect()).collect(),
            }
        }
    };
    let n = reach.len();
    if n > EXHAUSTIVE_MAX_POINTS {
        return Err(Error::ScaleLimit(format!(
            "exhaustive search accepts at most {EXHAUSTIVE_MAX_POINTS} points, got {n}"
        )));
    }
    let dirs: Vec<Vec<f64>> = (0..n_dirs.max(1)).map(|_| rng.unit_vector(reach.dim())).collect();
    let profiles: Vec<Vec<f64>> = dirs.iter().map(|w| reach.profile(w)).collect();

    let mut coarse: Vec<(Vec<usize>, f64)> = Vec::new();
    for size in 1..=k.min(n) {
        for combo in (0..n).combinations(size) {
            let r = profiles.iter().map(|p| reach.of(p, &combo)).fold(f64::INFINITY, f64::min);
            coarse.push((combo, reach.score(r)));
        }
    }
    let top = coarse.iter().map(|(_, s)| *s).fold(0.0, f64::max);
    coarse.retain(|(_, s)| *s >= top - REFINE_WINDOW);
    coarse.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    coarse.truncate(REFINE_SUBSETS);

    let mut best: (Vec<usize>, f64) = (Vec::new(), 0.0);
    for (combo, _) in coarse {
        let values: Vec<f64> = profiles.iter().map(|p| reach.of(p, &combo)).collect();
        let f = |w: &[f64]| reach.of(&reach.profile(w), &combo);
        let vectors = reach.linear(&combo);
        let r = lowest(&values, &dirs, REFINE_STARTS)
            .into_iter()
            .map(|i| descend(&vectors, &dirs[i], values[i], &f))
            .fold(f64::INFINITY, f64::min);
        let value = reach.score(r);
        let better = value > best.1 + TIE_TOLERANCE
            || ((value - best.1).abs() <= TIE_TOLERANCE && !best.0.is_empty() && combo < best.0)
            || (best.0.is_empty() && value > 0.0);
        if better {
            best = (combo, value);
        }
    }
    Ok(best)
}

/// Support of the projected hull in one tangent direction, where `along[i]`
/// and `across[i]` are the components of generator `i` along the axis and
/// the direction. Infinite when the hull reaches the equator on the
/// direction's side.
fn projected_support(along: &[f64], across: &[f64], subset: &[usize]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for (k, &i) in subset.iter().enumerate() {
        let (a, u) = (along[i], across[i]);
        if a.abs() <= EQUATOR_TOLERANCE {
            if u > 0.0 {
                return f64::INFINITY;
            }
        } else if a > 0.0 {
            best = best.max(u / a);
            for &j in &subset[k + 1..] {
                if along[j] < -EQUATOR_TOLERANCE && u / a + across[j] / -along[j] > 0.0 {
                    return f64::INFINITY;
                }
            }
        } else {
            for &j in &subset[k + 1..] {
                if along[j] > EQUATOR_TOLERANCE && across[j] / along[j] + u / -a > 0.0 {
                    return f64::INFINITY;
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn set(points: &[&[f64]]) -> EuclideanPointSet {
        EuclideanPointSet::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn ring(colatitude: f64, count: usize) -> SphericalPointSet {
        SphericalPointSet::new(
            (0..count)
                .map(|k| {
                    let phi = k as f64 * 2.0 * PI / count as f64;
                    vec![colatitude.sin() * phi.cos(), colatitude.sin() * phi.sin(), colatitude.cos()]
                })
                .collect(),
        )
        .unwrap()
    }

    fn octahedron() -> SphericalPointSet {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1.0, -1.0] {
                let mut p = vec![0.0; 3];
                p[i] = s;
                pts.push(p);
            }
        }
        SphericalPointSet::new(pts).unwrap()
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let mut a = RandomSource::new(7, 0);
        let mut b = RandomSource::new(7, 0);
        let mut c = RandomSource::new(7, 1);
        let xa: Vec<f64> = (0..5).map(|_| a.normal()).collect();
        let xb: Vec<f64> = (0..5).map(|_| b.normal()).collect();
        let xc: Vec<f64> = (0..5).map(|_| c.normal()).collect();
        assert_eq!(xa, xb);
        assert_ne!(xa, xc);
    }

    #[allow(clippy::approx_constant)]
    #[test]
    fn containment_estimator_examples() {
        let mut rng = RandomSource::new(1, 0);
        let square = set(&[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 1.0], &[-1.0, -1.0]]);
        let v = mc_containment_radius(&square, 100_000, &mut rng);
        assert!((1.0..=1.001).contains(&v), "{v}");
        let diamond = set(&[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);
        let v = mc_containment_radius(&diamond, 100_000, &mut rng);
        assert!((0.70710..=0.70810).contains(&v), "{v}");
        assert_eq!(mc_containment_radius_over(&diamond, &[vec![1.0, 0.0]]), 1.0);
    }

    #[test]
    fn refined_estimator_tracks_exact_radius() {
        use crate::euclid::containment_radius;
        let mut rng = RandomSource::new(9, 0);
        for _ in 0..20 {
            let pts: Vec<Vec<f64>> = (0..10).map(|_| (0..3).map(|_| rng.normal()).collect()).collect();
            let q = EuclideanPointSet::new(pts).unwrap();
            let Ok(exact) = containment_radius(&q) else {
                continue;
            };
            let estimate = mc_containment_radius_refined(&q, 2000, &mut rng);
            assert!(estimate >= exact - 1e-12 && estimate <= exact + 1e-6, "{estimate} vs {exact}");
        }
    }

    #[test]
    fn cap_samples_stay_in_the_cap() {
        let mut rng = RandomSource::new(3, 0);
        for ambient in [3, 4, 6] {
            let axis = rng.unit_vector(ambient);
            let cap = Cap::new(axis.clone(), 0.4).unwrap();
            for _ in 0..200 {
                let x = rng.cap_point(&cap);
                assert!((dot(&x, &x) - 1.0).abs() < 1e-12);
                assert!(dot(&x, &axis) >= 0.4f64.cos() - 1e-12);
            }
        }
    }

    #[test]
    fn cap_colatitude_matches_area_measure() {
        // On S², cos θ is uniform on [cos ρ, 1], so its mean is the midpoint.
        let mut rng = RandomSource::new(11, 0);
        let cap = Cap::north(3, 1.0).unwrap();
        let n = 20_000;
        let mean = (0..n).map(|_| rng.cap_point(&cap)[2]).sum::<f64>() / n as f64;
        assert!((mean - (1.0 + 1f64.cos()) / 2.0).abs() < 5e-3, "{mean}");
    }

    #[test]
    fn cap_containment_examples() {
        let mut rng = RandomSource::new(5, 0);
        let north = vec![0.0, 0.0, 1.0];
        assert!(mc_cap_contained(&octahedron(), &Cap::new(north.clone(), 2.0).unwrap(), 1000, &mut rng));
        let r = ring(FRAC_PI_4, 4);
        assert!(!mc_cap_contained(&r, &Cap::new(north.clone(), 0.7).unwrap(), 1000, &mut rng));
        assert!(mc_cap_contained(&r, &Cap::new(north.clone(), 0.6).unwrap(), 1000, &mut rng));
        assert!(mc_cap_contained(&r, &Cap::new(north, 0.0).unwrap(), 10, &mut rng));
    }

    #[test]
    fn exhaustive_examples() {
        let q = set(&[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 1.0], &[-1.0, -1.0], &[2.0, 0.0]]);
        let (subset, score) = exhaustive_best_subset(SubsetScorer::EuclidRadius(&q), 4).unwrap();
        assert_eq!(subset, vec![0, 1, 2, 3]);
        assert!((score - 1.0).abs() < 1e-3);
        let four = q.subset(&[0, 1, 2, 3]).unwrap();
        let (subset, _) = exhaustive_best_subset(SubsetScorer::EuclidRadius(&four), 4).unwrap();
        assert_eq!(subset, vec![0, 1, 2, 3]);
        assert_eq!(exhaustive_best_subset(SubsetScorer::EuclidRadius(&q), 0).unwrap(), (vec![], 0.0));
        let big = EuclideanPointSet::new(vec![vec![1.0, 0.0]; 13]).unwrap();
        assert!(matches!(exhaustive_best_subset(SubsetScorer::EuclidRadius(&big), 4), Err(Error::ScaleLimit(_))));
    }

    #[test]
    fn cap_scorer_examples() {
        let north = [0.0, 0.0, 1.0];
        let r = ring(FRAC_PI_4, 4);
        let (subset, score) = exhaustive_best_subset(SubsetScorer::CapAboutAxis(&r, &north), 4).unwrap();
        assert_eq!(subset, vec![0, 1, 2, 3]);
        assert!((score - 0.5f64.sqrt().atan()).abs() < 1e-5, "{score}");
        let (subset, score) = exhaustive_best_subset(SubsetScorer::CapAboutAxis(&octahedron(), &north), 4).unwrap();
        assert_eq!(score, PI);
        assert_eq!(subset, vec![0, 1]);
    }
}
