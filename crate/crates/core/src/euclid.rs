//! Convex geometry about the origin of `R^d`.
//!
//! The origin is the implicit center of every operation here: containment
//! radius is the radius of the largest origin-centered ball inside a hull,
//! and polarity is taken with respect to the origin.
//!
//! Two enumeration routes are kept deliberately separate. Facets of a hull
//! are found from affinely independent `d`-subsets of points through a null
//! space computation, while vertices of a polar body are found by solving the
//! `d × d` systems `⟨x, ℓ⟩ = 1` with an LU factorisation. The two routes meet
//! only in the duality identity `polar_max_norm · containment_radius = 1`.

use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, null_vector, orthogonal_direction, solve_square, sub};
use crate::lp;
use crate::{INTERIOR_MARGIN, MAX_ENUM_DIM, MAX_ENUM_POINTS};

/// Residual accepted when re-checking a convex combination.
pub const MEMBERSHIP_RESIDUAL: f64 = 1e-9;

/// A finite point set in `R^d`. Indices are the identity of points, so
/// duplicates are kept and order is stable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EuclideanPointSet {
    dim: usize,
    points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl EuclideanPointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map(Vec::len).ok_or_else(|| Error::invalid("point set is empty"))?;
        if dim == 0 {
            return Err(Error::invalid("points must have at least one coordinate"));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid("non-finite coordinate"));
            }
        }
        Ok(Self { dim, points, labels: None })
    }

    pub fn with_labels(points: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::invalid(format!("{} labels for {} points", labels.len(), points.len())));
        }
        let mut set = Self::new(points)?;
        set.labels = Some(labels);
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The points at `indices`, in that order. Labels follow their points.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(Error::invalid(format!("index {bad} out of range for {} points", self.len())));
        }
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        let mut set = Self::new(points)?;
        set.labels = self.labels.as_ref().map(|l| indices.iter().map(|&i| l[i].clone()).collect());
        Ok(set)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            points: self.points.iter().map(|p| p.iter().map(|x| x * factor).collect()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub(crate) fn refs(&self) -> Vec<&[f64]> {
        self.points.iter().map(Vec::as_slice).collect()
    }
}

/// The ball `B(o, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OriginBall {
    radius: f64,
}

impl OriginBall {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::invalid(format!("ball radius {radius} must be finite and >= 0")));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        norm(x) <= self.radius
    }
}

/// The closed halfspace `{x : ⟨x, normal⟩ ≤ offset}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    normal: Vec<f64>,
    offset: f64,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        if !(norm(&normal) >= 1e-12) {
            return Err(Error::invalid("halfspace normal must be nonzero"));
        }
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        dot(x, &self.normal) <= self.offset
    }
}

/// Result of [`polar_max_norm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolarExtent {
    Bounded(f64),
    /// The polar has a recession direction: the origin is not interior.
    Unbounded,
}

impl PolarExtent {
    pub fn bounded(self) -> Option<f64> {
        match self {
            PolarExtent::Bounded(r) => Some(r),
            PolarExtent::Unbounded => None,
        }
    }
}

/// A supporting hyperplane `{x : ⟨normal, x⟩ = offset}` of a hull with unit
/// `normal` and every point satisfying `⟨normal, x⟩ ≤ offset`. `offset` is
/// the signed distance of the hyperplane from the origin, positive when the
/// origin lies strictly inside.
#[derive(Debug, Clone, PartialEq)]
pub struct Facet {
    pub normal: Vec<f64>,
    pub offset: f64,
    /// The `d` points the hyperplane was constructed from.
    pub vertices: Vec<usize>,
}

pub(crate) fn check_enum_guard(n: usize, dim: usize) -> Result<()> {
    if n > MAX_ENUM_POINTS || dim > MAX_ENUM_DIM {
        return Err(Error::ScaleLimit(format!(
            "{n} points in dimension {dim} (limits: {MAX_ENUM_POINTS} points, dimension {MAX_ENUM_DIM})"
        )));
    }
    Ok(())
}

/// Relative tolerance for which side of a candidate facet a point lies on.
/// It scales with the larger of the facet's own vertices and the point, so
/// one far point does not blur the sides of facets among near ones.
const SIDE_TOLERANCE: f64 = 1e-10;

/// Visits every facet of `conv(points)` found from an affinely independent
/// `dim`-subset. Facets with more than `dim` points on them are visited once
/// per spanning subset.
pub(crate) fn for_each_facet(points: &[&[f64]], dim: usize, mut visit: impl FnMut(Facet) -> ControlFlow<()>) {
    let norms: Vec<f64> = points.iter().map(|p| norm(p)).collect();
    for combo in (0..points.len()).combinations(dim) {
        let base = points[combo[0]];
        let diffs: Vec<Vec<f64>> = combo[1..].iter().map(|&i| sub(points[i], base)).collect();
        let rows: Vec<&[f64]> = diffs.iter().map(Vec::as_slice).collect();
        let Some(normal) = null_vector(&rows, dim) else { continue };
        let offset = combo.iter().map(|&i| dot(&normal, points[i])).sum::<f64>() / dim as f64;

        let scale = combo.iter().map(|&i| norms[i]).fold(1.0, f64::max);
        let (mut below, mut above) = (false, false);
        for (p, &length) in points.iter().zip(&norms) {
            let s = dot(&normal, p) - offset;
            let tol = SIDE_TOLERANCE * scale.max(length);
            below |= s < -tol;
            above |= s > tol;
        }
        let facet = if below && !above {
            Facet { normal, offset, vertices: combo }
        } else if above && !below {
            Facet { normal: normal.iter().map(|x| -x).collect(), offset: -offset, vertices: combo }
        } else {
            // Either a separating plane or all points coplanar.
            continue;
        };
        if visit(facet).is_break() {
            return;
        }
    }
}

/// The facet of `conv(points)` closest to the origin (smallest signed
/// offset), or `None` when the hull has empty interior.
pub(crate) fn critical_facet(points: &[&[f64]], dim: usize) -> Option<Facet> {
    let mut best: Option<Facet> = None;
    for_each_facet(points, dim, |f| {
        if best.as_ref().is_none_or(|b| f.offset < b.offset) {
            best = Some(f);
        }
        ControlFlow::Continue(())
    });
    best
}

/// Containment radius of `conv(points)`, or `0` when the origin is not an
/// interior point. Stops at the first facet that passes within the interior
/// margin of the origin.
pub(crate) fn subset_radius(points: &[&[f64]], dim: usize) -> f64 {
    let mut radius = f64::INFINITY;
    for_each_facet(points, dim, |f| {
        radius = radius.min(f.offset);
        if radius <= INTERIOR_MARGIN {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    if radius.is_finite() && radius > INTERIOR_MARGIN {
        radius
    } else {
        0.0
    }
}

/// The direction in which `conv(points)` is weakest together with its
/// support value: the critical facet when the hull is full-dimensional,
/// otherwise a normal of the affine hull oriented so the support is `≤ 0`.
pub(crate) fn weakest_direction(points: &[&[f64]], dim: usize) -> Option<(f64, Vec<f64>)> {
    if points.is_empty() {
        return None;
    }
    if let Some(f) = critical_facet(points, dim) {
        return Some((f.offset, f.normal));
    }
    let base = points[0];
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, base)).collect();
    let rows: Vec<&[f64]> = diffs.iter().map(Vec::as_slice).collect();
    let mut u = orthogonal_direction(&rows, dim)?;
    let mut value = dot(&u, base);
    if value > 0.0 {
        u.iter_mut().for_each(|x| *x = -*x);
        value = -value;
    }
    Some((value, u))
}

/// Whether the origin lies in the interior of `conv(Q)`, witnessed by a ball
/// of radius [`INTERIOR_MARGIN`] around it.
///
/// Decided by linear programs: the hull must reach at least
/// `INTERIOR_MARGIN · √d` along each of the `2d` coordinate half-axes, which
/// places the cross-polytope of that size (and hence the ball) inside it.
pub fn contains_origin_interior(q: &EuclideanPointSet) -> bool {
    let d = q.dim();
    let needed = INTERIOR_MARGIN * (d as f64).sqrt();
    let refs = q.refs();
    (0..d).all(|j| {
        [1.0, -1.0].iter().all(|&sign| {
            let mut dir = vec![0.0; d];
            dir[j] = sign;
            lp::ray_extent(&refs, &dir).is_some_and(|t| t >= needed)
        })
    })
}

/// Radius of the largest ball about the origin contained in `conv(Q)`.
///
/// Enumerates the supporting hyperplanes spanned by affinely independent
/// `d`-subsets and returns the smallest distance from the origin.
pub fn containment_radius(q: &EuclideanPointSet) -> Result<f64> {
    check_enum_guard(q.len(), q.dim())?;
    let facet = critical_facet(&q.refs(), q.dim()).ok_or_else(|| Error::premise("convex hull has empty interior"))?;
    if facet.offset <= INTERIOR_MARGIN {
        return Err(Error::premise(format!(
            "origin is not interior to the hull (signed facet distance {:e})",
            facet.offset
        )));
    }
    Ok(facet.offset)
}

/// Whether `conv(Q) ⊇ B(o, radius)` up to `tol`. Small instances are decided
/// by facet enumeration; larger ones by growing a working subset along its
/// weakest direction until either the subset already contains the ball or
/// some direction shows `Q` cannot.
pub(crate) fn ball_in_hull(q: &EuclideanPointSet, radius: f64, tol: f64) -> Result<bool> {
    let d = q.dim();
    let refs = q.refs();
    if q.len() <= MAX_ENUM_POINTS {
        check_enum_guard(q.len(), d)?;
        return Ok(critical_facet(&refs, d).is_some_and(|f| f.offset >= radius - tol));
    }
    check_enum_guard(0, d)?;

    let argmax = |u: &[f64]| -> (usize, f64) {
        refs.iter().enumerate().map(|(i, p)| (i, dot(p, u))).fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
    };
    let mut working: Vec<usize> = Vec::new();
    for j in 0..d {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[j] = sign;
            let (i, _) = argmax(&e);
            if !working.contains(&i) {
                working.push(i);
            }
        }
    }
    loop {
        if working.len() > MAX_ENUM_POINTS {
            return Err(Error::ScaleLimit(format!(
                "premise check needs more than {MAX_ENUM_POINTS} supporting points"
            )));
        }
        let pts: Vec<&[f64]> = working.iter().map(|&i| refs[i]).collect();
        let (value, u) =
            weakest_direction(&pts, d).ok_or_else(|| Error::invalid("could not find a supporting direction"))?;
        if value >= radius - tol {
            return Ok(true);
        }
        let (i, support) = argmax(&u);
        if support < radius - tol {
            return Ok(false);
        }
        if working.contains(&i) {
            return Err(Error::VerificationFailed("premise search stalled on a repeated point".into()));
        }
        working.push(i);
    }
}

/// One halfspace `{x : ⟨x, s⟩ ≤ 1}` per point, order preserved. Their
/// intersection is the polar of the points.
pub fn polar_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Vec<Halfspace>> {
    points.iter().map(|s| Halfspace::new(s.as_ref().to_vec(), 1.0)).collect()
}

/// The smallest `R` with `polar(L) ⊆ B(o, R)`: the largest norm among the
/// vertices of the polar body.
pub fn polar_max_norm(l: &EuclideanPointSet) -> Result<PolarExtent> {
    check_enum_guard(l.len(), l.dim())?;
    if !contains_origin_interior(l) {
        return Ok(PolarExtent::Unbounded);
    }
    let d = l.dim();
    let refs = l.refs();
    let ones = vec![1.0; d];
    let mut best: Option<f64> = None;
    for combo in (0..l.len()).combinations(d) {
        let rows: Vec<&[f64]> = combo.iter().map(|&i| refs[i]).collect();
        let Some(x) = solve_square(&rows, &ones) else { continue };
        if refs.iter().all(|p| dot(p, &x) <= 1.0 + 1e-9) {
            let r = norm(&x);
            best = Some(best.map_or(r, |b: f64| b.max(r)));
        }
    }
    best.map(PolarExtent::Bounded)
        .ok_or_else(|| Error::VerificationFailed("bounded polar without a nondegenerate vertex".into()))
}

/// Indices of at most `d + 1` points whose convex hull contains the origin.
///
/// Starts from a basic solution of the membership program that prefers low
/// indices, then removes points by null-space steps until the remaining
/// points are affinely independent.
pub fn caratheodory_select(q: &EuclideanPointSet) -> Result<Vec<usize>> {
    let d = q.dim();
    let refs = q.refs();
    let origin = vec![0.0; d];
    let cost: Vec<f64> = (0..q.len()).map(|i| (i + 1) as f64).collect();
    let found = lp::convex_combination(&refs, &origin, Some(&cost))
        .filter(|w| w.residual <= MEMBERSHIP_RESIDUAL)
        .ok_or_else(|| Error::premise("origin is not in the convex hull"))?;

    let cutoff = 1e-13;
    let mut support: Vec<(usize, f64)> =
        found.weights.iter().copied().enumerate().filter(|&(_, w)| w > cutoff).collect();

    while support.len() > 1 {
        // Columns (p_i, 1); a kernel vector is an affine dependence.
        let rows: Vec<Vec<f64>> =
            (0..=d).map(|k| support.iter().map(|&(i, _)| if k < d { refs[i][k] } else { 1.0 }).collect()).collect();
        let row_refs: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
        let Some(mut mu) = orthogonal_direction(&row_refs, support.len()) else { break };
        if mu.iter().all(|&m| m <= 0.0) {
            mu.iter_mut().for_each(|m| *m = -*m);
        }
        let (pos, step) = support
            .iter()
            .zip(&mu)
            .enumerate()
            .filter(|(_, (_, &m))| m > 0.0)
            .map(|(k, (&(_, w), &m))| (k, w / m))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("kernel vector has a positive entry");
        for ((_, w), m) in support.iter_mut().zip(&mu) {
            *w -= step * m;
        }
        support.remove(pos);
        support.retain(|&(_, w)| w > cutoff);
    }

    let mut indices: Vec<usize> = support.iter().map(|&(i, _)| i).collect();
    indices.sort_unstable();
    let chosen: Vec<&[f64]> = indices.iter().map(|&i| refs[i]).collect();
    match lp::convex_combination(&chosen, &origin, None) {
        Some(w) if w.residual <= MEMBERSHIP_RESIDUAL && indices.len() <= d + 1 => Ok(indices),
        _ => Err(Error::VerificationFailed("Carathéodory reduction lost the origin".into())),
    }
}

/// Residual of the best convex combination of `points` representing the
/// origin, or `None` when the origin is outside their hull.
pub fn origin_membership_residual(points: &[Vec<f64>]) -> Option<f64> {
    let refs: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    let dim = points.first()?.len();
    lp::convex_combination(&refs, &vec![0.0; dim], None).map(|w| w.residual)
}
