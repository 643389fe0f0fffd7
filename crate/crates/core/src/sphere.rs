//! Points, caps and convexity on the unit sphere `S^d ⊂ R^(d+1)`.
//!
//! A set is spherically convex when it is the whole sphere or lies in an
//! open hemisphere and is closed under shorter great-circle arcs. So any
//! `C` that fits in no open hemisphere has `sconv(C) = S^d`, including the
//! degenerate case of an antipodal pair.
//!
//! The open polar cone `spolar(C) = {x : ⟨x, c⟩ > 0 for all c ∈ C}` is the
//! dual object: it is empty exactly when the origin lies in `conv(C)`, and
//! the largest cap about an axis inside `sconv(C)` is `π/2` minus the largest
//! angle between the axis and a ray of its closure.

use std::f64::consts::{FRAC_PI_2, PI};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{
    check_enum_guard, origin_membership_residual, polar_max_norm, EuclideanPointSet, MEMBERSHIP_RESIDUAL,
};
use crate::linalg::{dot, nnls, norm, normalized, null_vector, rank, tangent_basis};

/// Tolerance on unit norms after normalization.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Last coordinates smaller than this in magnitude cannot be projected.
pub const EQUATOR_TOLERANCE: f64 = 1e-12;

/// Witness margin for the strict inequalities `⟨x, c⟩ > 0`.
pub const CONE_MARGIN: f64 = 1e-9;

/// A finite set of unit vectors in `R^(d+1)` with `d ≥ 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalPointSet {
    points: Vec<Vec<f64>>,
}

impl SphericalPointSet {
    /// Normalizes every point onto the sphere.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let ambient = points.first().map(Vec::len).ok_or_else(|| Error::invalid("spherical point set is empty"))?;
        if ambient < 3 {
            return Err(Error::invalid(format!("points must live in R^(d+1) with d >= 2, got {ambient} coordinates")));
        }
        let points = points
            .into_iter()
            .map(|p| {
                if p.len() != ambient {
                    return Err(Error::DimensionMismatch { expected: ambient, found: p.len() });
                }
                if p.iter().any(|x| !x.is_finite()) {
                    return Err(Error::invalid("non-finite coordinate"));
                }
                // Leave already-unit vectors bit-for-bit unchanged so that
                // normalizing twice is the identity.
                if (norm(&p) - 1.0).abs() <= 2.0 * f64::EPSILON {
                    return Ok(p);
                }
                normalized(&p).ok_or_else(|| Error::invalid("zero vector cannot be normalized"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { points })
    }

    /// Like [`SphericalPointSet::new`], but rejects points whose norm is not
    /// already within `tol` of 1.
    pub fn from_unit_vectors(points: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| (norm(p) - 1.0).abs() > tol) {
            return Err(Error::invalid(format!("point {i} has norm {} (tolerance {tol:e})", norm(p))));
        }
        Self::new(points)
    }

    /// `d + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.points[0].len()
    }

    /// `d`.
    pub fn sphere_dim(&self) -> usize {
        self.ambient_dim() - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::invalid(format!("index {bad} out of range for {} points", self.len())));
        }
        Self::new(indices.iter().map(|&i| self.points[i].clone()).collect())
    }

    /// Applies the matrix given by its rows to every point.
    pub fn transformed(&self, rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(self.points.iter().map(|p| apply(rows, p)).collect())
    }

    pub(crate) fn refs(&self) -> Vec<&[f64]> {
        self.points.iter().map(Vec::as_slice).collect()
    }
}

/// `e_{d+1}` in `R^ambient`.
pub fn north_pole(ambient: usize) -> Vec<f64> {
    let mut e = vec![0.0; ambient];
    e[ambient - 1] = 1.0;
    e
}

/// The spherical cap `{u : ⟨u, axis⟩ ≥ cos ρ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cap {
    axis: Vec<f64>,
    rho: f64,
}

impl Cap {
    pub fn new(axis: Vec<f64>, rho: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&rho) {
            return Err(Error::invalid(format!("cap radius {rho} outside [0, π]")));
        }
        let axis = normalized(&axis).ok_or_else(|| Error::invalid("cap axis must be nonzero"))?;
        Ok(Self { axis, rho })
    }

    /// Cap about the north pole `e_{d+1}`.
    pub fn north(ambient: usize, rho: f64) -> Result<Self> {
        Self::new(north_pole(ambient), rho)
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        dot(u, &self.axis) >= self.rho.cos()
    }
}

/// The open cone `spolar(C) = {x : ⟨x, c_i⟩ > 0 for all i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeRep {
    generators: Vec<Vec<f64>>,
}

impl ConeRep {
    pub fn from_points(c: &SphericalPointSet) -> Self {
        Self { generators: c.points().to_vec() }
    }

    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    /// Whether `x` satisfies every `⟨x, c⟩ > 0` with margin [`CONE_MARGIN`].
    pub fn contains(&self, x: &[f64]) -> bool {
        let scale = norm(x);
        self.generators.iter().all(|c| dot(x, c) > CONE_MARGIN * scale)
    }
}

/// Central projection from the origin onto the hyperplane `x_{d+1} = 1`,
/// in coordinates with origin at the north pole.
pub fn central_project(x: &[f64]) -> Result<Vec<f64>> {
    let (&last, head) = x.split_last().ok_or_else(|| Error::invalid("cannot project an empty vector"))?;
    if last.abs() < EQUATOR_TOLERANCE {
        return Err(Error::EquatorSingularity(last));
    }
    Ok(head.iter().map(|v| v / last).collect())
}

/// Inverse of [`central_project`] on the open northern hemisphere.
pub fn lift_north(z: &[f64]) -> Vec<f64> {
    let mut v = z.to_vec();
    v.push(1.0);
    normalized(&v).expect("(z, 1) is nonzero")
}

/// Radius of the ball a northern cap of angular radius `rho` projects to.
pub fn cap_to_ball_radius(rho: f64) -> Result<f64> {
    if !(0.0..FRAC_PI_2).contains(&rho) {
        return Err(Error::premise(format!("cap radius {rho} outside [0, π/2)")));
    }
    Ok(rho.tan())
}

/// Whether `C` fits in no open hemisphere, i.e. the origin lies in `conv(C)`.
/// Points on the hull boundary count as inside, so antipodal pairs give an
/// empty polar cone.
pub fn spolar_empty(c: &SphericalPointSet) -> bool {
    origin_membership_residual(c.points()).is_some_and(|r| r <= MEMBERSHIP_RESIDUAL)
}

/// Reusable membership test for `sconv(C)`. The open-hemisphere question is
/// settled once; each query is then a non-negative least-squares solve.
#[derive(Debug, Clone)]
pub struct SphericalHull {
    generators: Vec<Vec<f64>>,
    full_sphere: bool,
}

impl SphericalHull {
    pub fn new(c: &SphericalPointSet) -> Self {
        Self { generators: c.points().to_vec(), full_sphere: spolar_empty(c) }
    }

    pub fn is_full_sphere(&self) -> bool {
        self.full_sphere
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if self.full_sphere {
            return true;
        }
        let cols: Vec<&[f64]> = self.generators.iter().map(Vec::as_slice).collect();
        let (_, residual) = nnls(&cols, x);
        residual <= MEMBERSHIP_RESIDUAL * norm(x).max(1.0)
    }
}

/// Whether `x ∈ sconv(C)`.
pub fn in_spherical_hull(c: &SphericalPointSet, x: &[f64]) -> bool {
    SphericalHull::new(c).contains(x)
}

/// Unit extreme rays of the closed cone `{x : ⟨x, c⟩ ≥ 0 for all c ∈ C}`,
/// found from every linearly independent `d`-subset of `C`. Assumes `C`
/// spans `R^(d+1)`, so the cone is pointed.
fn polar_extreme_rays(c: &SphericalPointSet) -> Vec<Vec<f64>> {
    let m = c.ambient_dim();
    let refs = c.refs();
    let tol = 1e-10;
    let mut rays = Vec::new();
    for combo in (0..c.len()).combinations(m - 1) {
        let rows: Vec<&[f64]> = combo.iter().map(|&i| refs[i]).collect();
        let Some(x) = null_vector(&rows, m) else { continue };
        let (lo, hi) = refs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            let s = dot(p, &x);
            (lo.min(s), hi.max(s))
        });
        if lo >= -tol {
            rays.push(x);
        } else if hi <= tol {
            rays.push(x.iter().map(|v| -v).collect());
        }
    }
    rays
}

/// Angular radius of the largest cap about `axis` inside `sconv(C)`.
///
/// `π` when `C` fits in no open hemisphere, `0` when the axis is outside the
/// hull or the hull has empty interior, and otherwise `π/2` minus the largest
/// angle between the axis and an extreme ray of the closed polar cone.
pub fn largest_cap_about_axis(c: &SphericalPointSet, axis: &[f64]) -> Result<f64> {
    check_axis(c, axis)?;
    check_enum_guard(c.len(), c.sphere_dim())?;
    if spolar_empty(c) {
        return Ok(PI);
    }
    let m = c.ambient_dim();
    if rank(&c.refs(), m) < m {
        return Ok(0.0);
    }
    let axis = normalized(axis).expect("checked nonzero");
    let min_cos = polar_extreme_rays(c).iter().map(|x| dot(x, &axis)).fold(f64::INFINITY, f64::min);
    if !min_cos.is_finite() {
        return Err(Error::VerificationFailed("polar cone has no extreme rays".into()));
    }
    Ok(min_cos.clamp(0.0, 1.0).asin())
}

/// Angular radius about `axis` of `K = spolar(C) ∩ S^d`: the largest angle
/// between the axis and a point of `K`. `None` when `spolar(C)` is empty.
///
/// When every point of `C` lies strictly on the axis side, this is computed
/// in the tangent chart at the axis, where `K` becomes a polytope whose
/// farthest vertex gives the radius. Otherwise it falls back to extreme rays.
pub fn spolar_angular_radius(c: &SphericalPointSet, axis: &[f64]) -> Result<Option<f64>> {
    check_axis(c, axis)?;
    check_enum_guard(c.len(), c.sphere_dim())?;
    if spolar_empty(c) {
        return Ok(None);
    }
    let axis = normalized(axis).expect("checked nonzero");
    let basis = tangent_basis(&axis);
    if c.points().iter().all(|p| dot(p, &axis) > CONE_MARGIN) {
        // ⟨c, a + Σ z_i t_i⟩ > 0  ⇔  ⟨z, −c̃ / c_a⟩ < 1.
        let polar_pts: Vec<Vec<f64>> = c
            .points()
            .iter()
            .map(|p| {
                let along = dot(p, &axis);
                basis.iter().map(|t| -dot(p, t) / along).collect()
            })
            .collect();
        let l = EuclideanPointSet::new(polar_pts)?;
        if let Some(r) = polar_max_norm(&l)?.bounded() {
            return Ok(Some(r.atan()));
        }
    }
    let m = c.ambient_dim();
    if rank(&c.refs(), m) < m {
        return Ok(Some(PI));
    }
    let min_cos = polar_extreme_rays(c).iter().map(|x| dot(x, &axis)).fold(f64::INFINITY, f64::min);
    Ok(Some(min_cos.clamp(-1.0, 1.0).acos()))
}

fn check_axis(c: &SphericalPointSet, axis: &[f64]) -> Result<()> {
    if axis.len() != c.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: c.ambient_dim(), found: axis.len() });
    }
    if !(norm(axis) > 0.0) {
        return Err(Error::invalid("axis must be nonzero"));
    }
    Ok(())
}

/// Matrix-vector product with the matrix given by rows.
pub fn apply(rows: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    rows.iter().map(|r| dot(r, x)).collect()
}

/// A rotation (as rows) taking the unit vector `from` to the unit vector
/// `to`, acting as the identity on the complement of their span.
pub fn rotation_between(from: &[f64], to: &[f64]) -> Result<Vec<Vec<f64>>> {
    let m = from.len();
    if to.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: to.len() });
    }
    let a = normalized(from).ok_or_else(|| Error::invalid("zero vector"))?;
    let b = normalized(to).ok_or_else(|| Error::invalid("zero vector"))?;
    let c = dot(&a, &b);
    let mut r = vec![vec![0.0; m]; m];
    if c < -1.0 + 1e-12 {
        // Half turn in the plane of `a` and some `w ⟂ a`.
        let w = tangent_basis(&a).into_iter().next().expect("m >= 2");
        for i in 0..m {
            for j in 0..m {
                r[i][j] = (i == j) as u8 as f64 - 2.0 * a[i] * a[j] - 2.0 * w[i] * w[j];
            }
        }
        return Ok(r);
    }
    // R = I + K + K²/(1 + c) with K = b aᵀ − a bᵀ.
    let k: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| b[i] * a[j] - a[i] * b[j]).collect()).collect();
    for i in 0..m {
        for j in 0..m {
            let k2: f64 = (0..m).map(|l| k[i][l] * k[l][j]).sum();
            r[i][j] = (i == j) as u8 as f64 + k[i][j] + k2 / (1.0 + c);
        }
    }
    Ok(r)
}
