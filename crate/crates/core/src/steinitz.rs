//! Quantitative Steinitz selection and its polar form, quantitative Helly.
//!
//! If `conv(Q)` contains the unit ball about the origin, some `2d` points of
//! `Q` already contain a ball of radius `r(d) > 0`. The exact value of `r(d)`
//! is unknown; it is known to lie in `[1/(6d²), 1/(2√d)]`. Certificates
//! therefore record the radius actually achieved by the selection.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{
    ball_in_hull, check_enum_guard, polar_max_norm, subset_radius, weakest_direction, EuclideanPointSet, PolarExtent,
};
use crate::linalg::dot;
use crate::{MAX_ENUM_POINTS, PREMISE_TOLERANCE};

/// Scores within this of the best are considered tied.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Greedy,
}

/// A selection of at most `2d` points together with the radius it keeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteinitzCertificate {
    /// Sorted indices into the input.
    pub indices: Vec<usize>,
    /// Containment radius of the selected points.
    pub achieved_radius: f64,
    pub method: Method,
    /// `2d`.
    pub cardinality_bound: usize,
    /// Radius of the ball the input was required to contain.
    pub premise_radius: f64,
}

impl SteinitzCertificate {
    /// `achieved_radius / premise_radius`, the quantity bounded below by `r(d)`.
    pub fn relative_radius(&self) -> f64 {
        self.achieved_radius / self.premise_radius
    }
}

/// Known bracket `1/(6d²) ≤ r(d) ≤ 1/(2√d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RBound {
    pub dim: usize,
    pub lower: f64,
    pub upper: f64,
}

impl RBound {
    pub fn for_dim(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        let d = dim as f64;
        Self { dim, lower: 1.0 / (6.0 * d * d), upper: (1.0 / (2.0 * d.sqrt())).min(1.0) }
    }
}

/// Premise radius and size limits for the selectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionConfig {
    /// The radius of the ball `conv(Q)` must contain.
    pub premise_radius: f64,
    /// Largest input accepted by exhaustive search.
    pub exact_max_points: usize,
    /// Largest input accepted by the greedy selector.
    pub greedy_max_points: usize,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self { premise_radius: 1.0, exact_max_points: 20, greedy_max_points: 10_000 }
    }
}

impl SelectionConfig {
    /// The selector that fits an instance of `n` points.
    pub fn method_for(&self, n: usize) -> Method {
        if n <= self.exact_max_points {
            Method::Exact
        } else {
            Method::Greedy
        }
    }
}

fn check_premise(q: &EuclideanPointSet, premise: f64) -> Result<()> {
    if !(premise > 0.0) || !premise.is_finite() {
        return Err(Error::invalid(format!("premise radius {premise} must be positive")));
    }
    if !ball_in_hull(q, premise, PREMISE_TOLERANCE)? {
        return Err(Error::premise(format!(
            "convex hull does not contain the ball of radius {premise} about the origin"
        )));
    }
    Ok(())
}

/// Exhaustive selection with the default configuration.
pub fn select_exact(q: &EuclideanPointSet) -> Result<SteinitzCertificate> {
    select_exact_with(q, &SelectionConfig::default())
}

/// Searches every subset of size at most `2d` and keeps one with the largest
/// containment radius. Ties go to the lexicographically smallest sorted index
/// tuple, so the result does not depend on visiting order.
pub fn select_exact_with(q: &EuclideanPointSet, cfg: &SelectionConfig) -> Result<SteinitzCertificate> {
    let (n, d) = (q.len(), q.dim());
    if n > cfg.exact_max_points {
        return Err(Error::ScaleLimit(format!(
            "exact search accepts at most {} points, got {n}",
            cfg.exact_max_points
        )));
    }
    check_enum_guard(n.min(MAX_ENUM_POINTS), d)?;
    check_premise(q, cfg.premise_radius)?;

    let refs: Vec<&[f64]> = q.points().iter().map(Vec::as_slice).collect();
    let max_size = (2 * d).min(n);
    let mut scored: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut best = 0.0f64;
    for size in (d + 1)..=max_size {
        for combo in (0..n).combinations(size) {
            let pts: Vec<&[f64]> = combo.iter().map(|&i| refs[i]).collect();
            if spans_halfspace_through_origin(&pts, d) {
                continue;
            }
            let r = subset_radius(&pts, d);
            if r > 0.0 && r >= best - TIE_TOLERANCE {
                best = best.max(r);
                scored.push((r, combo));
            }
        }
    }
    let (achieved_radius, indices) = scored
        .into_iter()
        .filter(|(r, _)| *r >= best - TIE_TOLERANCE)
        .min_by(|a, b| a.1.cmp(&b.1))
        .ok_or_else(|| Error::VerificationFailed("no subset keeps the origin interior".into()))?;

    Ok(SteinitzCertificate {
        indices,
        achieved_radius,
        method: Method::Exact,
        cardinality_bound: 2 * d,
        premise_radius: cfg.premise_radius,
    })
}

/// Quick rejection of subsets lying in a closed halfspace through the
/// origin: some coordinate direction or point direction already has every
/// point on one side.
fn spans_halfspace_through_origin(points: &[&[f64]], d: usize) -> bool {
    let one_sided = |u: &[f64]| points.iter().all(|p| dot(p, u) <= 0.0);
    (0..d).any(|j| {
        let mut e = vec![0.0; d];
        e[j] = 1.0;
        let pos = one_sided(&e);
        e[j] = -1.0;
        pos || one_sided(&e)
    }) || points.iter().any(|p| {
        let neg: Vec<f64> = p.iter().map(|x| -x).collect();
        one_sided(&neg)
    })
}

/// Greedy selection with the default configuration.
pub fn select_greedy(q: &EuclideanPointSet) -> Result<SteinitzCertificate> {
    select_greedy_with(q, &SelectionConfig::default())
}

/// Grows a selection from the two points extreme along `±e1`, each step
/// adding the point with the largest support along the current selection's
/// weakest direction, until `2d` points are chosen.
///
/// A heuristic: the achieved radius is reported as found and may fall below
/// the lower bound on `r(d)`.
pub fn select_greedy_with(q: &EuclideanPointSet, cfg: &SelectionConfig) -> Result<SteinitzCertificate> {
    let (n, d) = (q.len(), q.dim());
    if n > cfg.greedy_max_points {
        return Err(Error::ScaleLimit(format!(
            "greedy selection accepts at most {} points, got {n}",
            cfg.greedy_max_points
        )));
    }
    check_enum_guard(0, d)?;
    check_premise(q, cfg.premise_radius)?;

    let refs: Vec<&[f64]> = q.points().iter().map(Vec::as_slice).collect();
    let extreme = |u: &[f64], chosen: &[usize]| -> Option<usize> {
        (0..n)
            .filter(|i| !chosen.contains(i))
            .map(|i| (i, dot(refs[i], u)))
            .fold(None, |best: Option<(usize, f64)>, cur| match best {
                Some(b) if b.1 >= cur.1 => Some(b),
                _ => Some(cur),
            })
            .map(|(i, _)| i)
    };

    let mut e1 = vec![0.0; d];
    e1[0] = 1.0;
    let mut chosen = Vec::with_capacity(2 * d);
    chosen.extend(extreme(&e1, &chosen));
    e1[0] = -1.0;
    chosen.extend(extreme(&e1, &chosen));

    let target = (2 * d).min(n);
    while chosen.len() < target {
        let pts: Vec<&[f64]> = chosen.iter().map(|&i| refs[i]).collect();
        let (_, u) = weakest_direction(&pts, d).ok_or_else(|| Error::invalid("could not find a weakest direction"))?;
        match extreme(&u, &chosen) {
            Some(i) => chosen.push(i),
            None => break,
        }
    }
    chosen.sort_unstable();
    let pts: Vec<&[f64]> = chosen.iter().map(|&i| refs[i]).collect();
    Ok(SteinitzCertificate {
        achieved_radius: subset_radius(&pts, d),
        indices: chosen,
        method: Method::Greedy,
        cardinality_bound: 2 * d,
        premise_radius: cfg.premise_radius,
    })
}

/// Runs the selector appropriate for the instance size.
pub fn select_auto(q: &EuclideanPointSet, cfg: &SelectionConfig) -> Result<SteinitzCertificate> {
    match cfg.method_for(q.len()) {
        Method::Exact => select_exact_with(q, cfg),
        Method::Greedy => select_greedy_with(q, cfg),
    }
}

/// Outcome of [`qht_select`].
#[derive(Debug, Clone, PartialEq)]
pub struct QhtSelection {
    pub indices: Vec<usize>,
    /// `R` with `polar(L′) ⊆ B(o, R)`; the reciprocal of the achieved radius.
    pub guaranteed_polar_radius: f64,
    /// The Steinitz certificate of the same selection.
    pub certificate: SteinitzCertificate,
}

/// Quantitative Helly selection: given `L` with `polar(L) ⊆ B(o, 1)`,
/// returns at most `2d` points `L′` with `polar(L′)` inside a ball of radius
/// `1 / achieved_radius`, re-verified by polar vertex enumeration.
pub fn qht_select(l: &EuclideanPointSet, cfg: &SelectionConfig) -> Result<QhtSelection> {
    if l.len() <= MAX_ENUM_POINTS {
        match polar_max_norm(l)? {
            PolarExtent::Unbounded => return Err(Error::premise("polar is unbounded")),
            PolarExtent::Bounded(r) if r > 1.0 + PREMISE_TOLERANCE => {
                return Err(Error::premise(format!("polar reaches norm {r} > 1")))
            }
            PolarExtent::Bounded(_) => {}
        }
    } else if !ball_in_hull(l, 1.0 / (1.0 + PREMISE_TOLERANCE), PREMISE_TOLERANCE)? {
        return Err(Error::premise("polar is not contained in the unit ball"));
    }

    let inner = SelectionConfig { premise_radius: 1.0, ..cfg.clone() };
    let certificate = select_auto(l, &inner)?;
    let guaranteed_polar_radius =
        if certificate.achieved_radius > 0.0 { 1.0 / certificate.achieved_radius } else { f64::INFINITY };
    if guaranteed_polar_radius.is_finite() {
        let chosen = l.subset(&certificate.indices)?;
        let slack = PREMISE_TOLERANCE * guaranteed_polar_radius.max(1.0);
        match polar_max_norm(&chosen)? {
            PolarExtent::Bounded(r) if r <= guaranteed_polar_radius + slack => {}
            other => {
                return Err(Error::VerificationFailed(format!(
                    "polar of the selection reaches {other:?}, guaranteed {guaranteed_polar_radius}"
                )))
            }
        }
    }
    Ok(QhtSelection { indices: certificate.indices.clone(), guaranteed_polar_radius, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::containment_radius;

    fn set(points: &[[f64; 2]]) -> EuclideanPointSet {
        EuclideanPointSet::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn rbound_values() {
        let b = RBound::for_dim(2);
        assert!((b.lower - 1.0 / 24.0).abs() < 1e-15);
        assert!((b.upper - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        for d in 1..=10 {
            let b = RBound::for_dim(d);
            assert!(0.0 < b.lower && b.lower <= b.upper && b.upper <= 1.0);
        }
    }

    #[test]
    fn exact_cross_polytope_keeps_everything() {
        let q = set(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]);
        let q = q.scaled(2f64.sqrt());
        let c = select_exact(&q).unwrap();
        assert_eq!(c.indices, vec![0, 1, 2, 3]);
        assert!((c.achieved_radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_unit_cross_polytope_is_below_premise() {
        let q = set(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]);
        assert!(matches!(select_exact(&q), Err(Error::PremiseViolated(_))));
        let cfg = SelectionConfig { premise_radius: 0.5f64.sqrt(), ..Default::default() };
        let c = select_exact_with(&q, &cfg).unwrap();
        assert_eq!(c.indices, vec![0, 1, 2, 3]);
        assert!((c.achieved_radius - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exact_drops_the_redundant_point() {
        let q = set(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0], [2.0, 0.0]]);
        let c = select_exact(&q).unwrap();
        assert_eq!(c.indices, vec![0, 1, 2, 3]);
        assert!((c.achieved_radius - 1.0).abs() < 1e-12);
        assert_eq!(c.method, Method::Exact);
        assert_eq!(c.cardinality_bound, 4);
    }

    #[test]
    fn exact_rejects_premise_failures_and_large_inputs() {
        let q = set(&[[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]);
        assert!(matches!(select_exact(&q), Err(Error::PremiseViolated(_))));
        let circle: Vec<Vec<f64>> = (0..21)
            .map(|k| {
                let a = k as f64 * 0.3;
                vec![3.0 * a.cos(), 3.0 * a.sin()]
            })
            .collect();
        let q = EuclideanPointSet::new(circle).unwrap();
        assert!(matches!(select_exact(&q), Err(Error::ScaleLimit(_))));
    }

    #[test]
    fn greedy_square_and_circle() {
        let q = set(&[[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]);
        let c = select_greedy(&q).unwrap();
        assert_eq!(c.indices, vec![0, 1, 2, 3]);
        assert!((c.achieved_radius - 1.0).abs() < 1e-12);

        let circle: Vec<Vec<f64>> = (0..64)
            .map(|k| {
                let a = k as f64 * std::f64::consts::PI / 32.0;
                vec![2.0 * a.cos(), 2.0 * a.sin()]
            })
            .collect();
        let q = EuclideanPointSet::new(circle).unwrap();
        let c = select_greedy(&q).unwrap();
        assert_eq!(c.indices.len(), 4);
        assert_eq!(c.method, Method::Greedy);
        assert!(c.achieved_radius >= 1.0);
        let check = containment_radius(&q.subset(&c.indices).unwrap()).unwrap();
        assert!((check - c.achieved_radius).abs() < 1e-9);
    }

    #[test]
    fn greedy_rejects_small_hulls() {
        let q = set(&[[0.5, 0.0], [-0.5, 0.0], [0.0, 0.5], [0.0, -0.5]]);
        assert!(matches!(select_greedy(&q), Err(Error::PremiseViolated(_))));
    }

    #[test]
    fn qht_on_scaled_cross_polytope() {
        let l = set(&[[2.0, 0.0], [-2.0, 0.0], [0.0, 2.0], [0.0, -2.0]]);
        let s = qht_select(&l, &SelectionConfig::default()).unwrap();
        assert_eq!(s.indices, vec![0, 1, 2, 3]);
        assert!((s.guaranteed_polar_radius - 0.5f64.sqrt()).abs() < 1e-12);
        let r = polar_max_norm(&l.subset(&s.indices).unwrap()).unwrap().bounded().unwrap();
        assert!(r <= 0.7072);
        assert!((s.guaranteed_polar_radius * s.certificate.achieved_radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn qht_rejects_unbounded_polar() {
        let l = set(&[[1.0, 0.0], [0.0, 1.0]]);
        assert!(matches!(qht_select(&l, &SelectionConfig::default()), Err(Error::PremiseViolated(_))));
    }

    #[test]
    fn halfspace_prefilter_agrees_with_radius() {
        let pts = [[1.0, 0.2], [0.5, -1.0], [0.9, 0.9]];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        assert!(spans_halfspace_through_origin(&refs, 2));
        assert_eq!(subset_radius(&refs, 2), 0.0);
    }
}
