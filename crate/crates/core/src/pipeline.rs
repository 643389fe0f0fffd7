//! Spherical point selection.
//!
//! Given `C ⊂ S^d` whose spherical hull contains the cap of radius `ρ` about
//! the north pole, [`select_spherical`] picks at most `2d` points of `C` whose
//! hull still contains a cap about the pole, and reports both the cap it can
//! prove analytically and the cap it actually measured.
//!
//! Three cases are distinguished:
//!
//! * `C` fits in no open hemisphere: a Carathéodory subset of size at most
//!   `d + 2` already has the whole sphere as its hull.
//! * `C` lies in the open northern hemisphere: central projection turns the
//!   cap into a ball of radius `tan ρ` and the Euclidean selector runs on the
//!   projected points.
//! * Otherwise the polar body of `C` projects to a bounded intersection of
//!   halfspaces, and the dual (Helly) selection is applied to those.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{caratheodory_select, containment_radius, polar_max_norm, EuclideanPointSet};
use crate::linalg::{dot, norm};
use crate::lp;
use crate::sphere::{central_project, largest_cap_about_axis, north_pole, spolar_empty, SphericalPointSet};
use crate::steinitz::{qht_select, select_auto, Method, SelectionConfig};
use crate::PREMISE_TOLERANCE;

/// Points whose last coordinate exceeds this count as strictly northern.
pub const NORTHERN_MARGIN: f64 = 1e-9;

/// Largest cap radius accepted by [`gamma_consistency_probe`].
pub const PROBE_MAX_RHO: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    FullSphere,
    Northern,
    General,
}

/// Outcome of [`select_spherical`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalCertificate {
    /// Sorted indices into the input.
    pub indices: Vec<usize>,
    pub case_tag: CaseTag,
    /// The cap radius the input was required to contain.
    pub rho: f64,
    /// Largest cap about the pole inside the hull of the selection.
    pub achieved_cap: f64,
    /// Lower bound on `achieved_cap` derived from the Euclidean selection.
    pub certified_cap: f64,
    /// Euclidean radius used in the bound, clamped to `(0, 1]`.
    pub internal_radius: Option<f64>,
    /// Unclamped radius returned by the Euclidean selector on the rescaled
    /// instance.
    pub selector_radius: Option<f64>,
    pub method: Option<Method>,
    /// Whether the dual selection was centered away from the pole.
    pub polarity_center_shifted: bool,
}

/// Arguments of the two trigonometric lemmas behind the cap bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaScalars {
    pub t: f64,
    pub rho: f64,
    pub r: f64,
}

impl LemmaScalars {
    pub fn new(t: f64, rho: f64, r: f64) -> Result<Self> {
        if !(t > 0.0 && t < FRAC_PI_2) {
            return Err(Error::premise(format!("t = {t} outside (0, π/2)")));
        }
        check_rho(rho)?;
        check_r(r)?;
        Ok(Self { t, rho, r })
    }

    pub fn tan_bounds(&self) -> bool {
        tan_bounds_hold(self.t)
    }

    /// Whether `π/2 − arctan(cot ρ / r) ≥ rρ/2 − slack`.
    pub fn cap_bound(&self, slack: f64) -> bool {
        certified_cap_bound_holds(self.rho, self.r, slack)
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho < FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::premise(format!("cap radius {rho} outside (0, π/2)")))
    }
}

fn check_r(r: f64) -> Result<()> {
    if r > 0.0 && r <= 1.0 {
        Ok(())
    } else {
        Err(Error::premise(format!("radius {r} outside (0, 1]")))
    }
}

/// `π/2 − arctan(cot ρ / r)`: the cap about the pole guaranteed once the
/// projected polar body shrinks from radius `cot ρ` to `cot ρ / r`.
pub fn certified_cap_radius(rho: f64, r: f64) -> Result<f64> {
    check_rho(rho)?;
    check_r(r)?;
    Ok(FRAC_PI_2 - (1.0 / (rho.tan() * r)).atan())
}

/// `t ≤ tan t` on `(0, π/2)`, and `tan t ≤ 2t` when also `t < π/4`.
/// Arguments outside `(0, π/2)` give `false`.
pub fn tan_bounds_hold(t: f64) -> bool {
    if !(t > 0.0 && t < FRAC_PI_2) {
        return false;
    }
    let tan = t.tan();
    t <= tan && (t >= FRAC_PI_4 || tan <= 2.0 * t)
}

/// Whether [`certified_cap_radius`] is at least `rρ/2 − slack`.
pub fn certified_cap_bound_holds(rho: f64, r: f64, slack: f64) -> bool {
    certified_cap_radius(rho, r).is_ok_and(|cap| cap >= r * rho / 2.0 - slack)
}

/// Selection with the default configuration.
pub fn select_spherical(c: &SphericalPointSet, rho: f64) -> Result<SphericalCertificate> {
    select_spherical_with(c, rho, &SelectionConfig::default())
}

pub fn select_spherical_with(c: &SphericalPointSet, rho: f64, cfg: &SelectionConfig) -> Result<SphericalCertificate> {
    check_rho(rho)?;
    let north = north_pole(c.ambient_dim());
    let cap = largest_cap_about_axis(c, &north)?;
    if cap < rho - PREMISE_TOLERANCE {
        return Err(Error::premise(format!("largest cap about the pole is {cap}, below the required {rho}")));
    }

    let cert = if spolar_empty(c) {
        full_sphere(c, rho)?
    } else if c.points().iter().all(|p| last(p) > NORTHERN_MARGIN) {
        northern(c, rho, cfg)?
    } else {
        general(c, rho, cfg)?
    };

    if cert.achieved_cap < cert.certified_cap - PREMISE_TOLERANCE {
        return Err(Error::VerificationFailed(format!(
            "measured cap {} is below the certified {}",
            cert.achieved_cap, cert.certified_cap
        )));
    }
    Ok(cert)
}

fn last(p: &[f64]) -> f64 {
    p[p.len() - 1]
}

fn measured_cap(c: &SphericalPointSet, indices: &[usize]) -> Result<f64> {
    let chosen = c.subset(indices)?;
    largest_cap_about_axis(&chosen, &north_pole(c.ambient_dim()))
}

fn full_sphere(c: &SphericalPointSet, rho: f64) -> Result<SphericalCertificate> {
    let ambient = EuclideanPointSet::new(c.points().to_vec())?;
    let indices = caratheodory_select(&ambient)?;
    let achieved_cap = measured_cap(c, &indices)?;
    if achieved_cap < PI {
        return Err(Error::VerificationFailed("Carathéodory subset fits in an open hemisphere".into()));
    }
    Ok(SphericalCertificate {
        indices,
        case_tag: CaseTag::FullSphere,
        rho,
        achieved_cap,
        certified_cap: PI,
        internal_radius: None,
        selector_radius: None,
        method: None,
        polarity_center_shifted: false,
    })
}

fn northern(c: &SphericalPointSet, rho: f64, cfg: &SelectionConfig) -> Result<SphericalCertificate> {
    let projected = EuclideanPointSet::new(c.points().iter().map(|p| central_project(p)).collect::<Result<_>>()?)?;
    // Within premise tolerance the projected hull may fall just short of
    // `tan ρ`; rescaling by the smaller value keeps the premise exact.
    let scale = rho.tan().min(containment_radius(&projected)?);
    let inner = SelectionConfig { premise_radius: 1.0, ..cfg.clone() };
    let selection = select_auto(&projected.scaled(1.0 / scale), &inner)?;
    let internal = selection.achieved_radius.min(1.0);
    Ok(SphericalCertificate {
        achieved_cap: measured_cap(c, &selection.indices)?,
        certified_cap: (internal * scale).atan(),
        indices: selection.indices,
        case_tag: CaseTag::Northern,
        rho,
        internal_radius: Some(internal),
        selector_radius: Some(selection.achieved_radius),
        method: Some(selection.method),
        polarity_center_shifted: false,
    })
}

/// Splits `c` into its first `d` coordinates and the last one.
fn split(c: &[f64]) -> (&[f64], f64) {
    let (&h, rest) = c.split_last().expect("nonempty");
    (rest, h)
}

fn general(c: &SphericalPointSet, rho: f64, cfg: &SelectionConfig) -> Result<SphericalCertificate> {
    let d = c.sphere_dim();
    // The projected polar body is {z : ⟨z, −c̄⟩ < c_{d+1} for all c}.
    let shifted = c.points().iter().any(|p| last(p) <= 0.0);
    let center = if shifted {
        let normals: Vec<Vec<f64>> = c.points().iter().map(|p| split(p).0.iter().map(|v| -v).collect()).collect();
        let refs: Vec<&[f64]> = normals.iter().map(Vec::as_slice).collect();
        let offsets: Vec<f64> = c.points().iter().map(|p| last(p)).collect();
        let (center, radius) = lp::chebyshev_center(&refs, &offsets, d)
            .ok_or_else(|| Error::VerificationFailed("projected polar body has no center".into()))?;
        if !(radius > 0.0) {
            return Err(Error::VerificationFailed("projected polar body has empty interior".into()));
        }
        center
    } else {
        vec![0.0; d]
    };

    // Polar points about `center`: ⟨z − p, −c̄ / (c_{d+1} + ⟨c̄, p⟩)⟩ < 1.
    // Points with c̄ = 0 impose no constraint and are left out.
    let mut kept = Vec::new();
    let mut polar = Vec::new();
    for (i, p) in c.points().iter().enumerate() {
        let (head, h) = split(p);
        if norm(head) <= 1e-15 {
            continue;
        }
        let slack = h + dot(head, &center);
        if !(slack > 0.0) {
            return Err(Error::VerificationFailed(format!("polarity center violates the constraint of point {i}")));
        }
        kept.push(i);
        polar.push(head.iter().map(|v| -v / slack).collect::<Vec<f64>>());
    }
    let polar = EuclideanPointSet::new(polar)?;
    let extent = polar_max_norm(&polar)?
        .bounded()
        .ok_or_else(|| Error::VerificationFailed("projected polar body is unbounded".into()))?;
    let scale = if shifted { extent } else { (1.0 / rho.tan()).max(extent) };

    let inner = SelectionConfig { premise_radius: 1.0, ..cfg.clone() };
    let selection = qht_select(&polar.scaled(scale), &inner)?;
    let r = selection.certificate.achieved_radius;
    let internal = r.min(1.0);
    let certified_cap = if shifted {
        FRAC_PI_2 - (norm(&center) + scale / internal).atan()
    } else {
        FRAC_PI_2 - (scale / internal).atan()
    };
    let mut indices: Vec<usize> = selection.indices.iter().map(|&k| kept[k]).collect();
    indices.sort_unstable();
    Ok(SphericalCertificate {
        achieved_cap: measured_cap(c, &indices)?,
        certified_cap,
        indices,
        case_tag: CaseTag::General,
        rho,
        internal_radius: Some(internal),
        selector_radius: Some(r),
        method: Some(selection.certificate.method),
        polarity_center_shifted: shifted,
    })
}

/// Compares the spherical and Euclidean selection ratios on a northern
/// instance at a small cap radius: returns `achieved_cap / ρ` minus the
/// containment radius of the selected points after central projection and
/// rescaling by `1 / tan ρ`. Both ratios agree in the limit `ρ → 0`.
pub fn gamma_consistency_probe(c: &SphericalPointSet, rho_small: f64) -> Result<f64> {
    gamma_consistency_probe_with(c, rho_small, &SelectionConfig::default())
}

pub fn gamma_consistency_probe_with(c: &SphericalPointSet, rho_small: f64, cfg: &SelectionConfig) -> Result<f64> {
    if !(rho_small > 0.0 && rho_small <= PROBE_MAX_RHO) {
        return Err(Error::premise(format!("probe radius {rho_small} outside (0, {PROBE_MAX_RHO}]")));
    }
    if c.points().iter().any(|p| last(p) <= NORTHERN_MARGIN) {
        return Err(Error::premise("probe requires points in the open northern hemisphere"));
    }
    let cert = select_spherical_with(c, rho_small, cfg)?;
    if cert.case_tag != CaseTag::Northern {
        return Err(Error::premise("probe requires a northern instance"));
    }
    let chosen =
        EuclideanPointSet::new(cert.indices.iter().map(|&i| central_project(c.point(i))).collect::<Result<_>>()?)?;
    let euclid_ratio = containment_radius(&chosen)? / rho_small.tan();
    Ok(cert.achieved_cap / rho_small - euclid_ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(colatitude: f64, count: usize, phase: f64) -> Vec<Vec<f64>> {
        (0..count)
            .map(|k| {
                let phi = phase + k as f64 * 2.0 * PI / count as f64;
                vec![colatitude.sin() * phi.cos(), colatitude.sin() * phi.sin(), colatitude.cos()]
            })
            .collect()
    }

    #[test]
    fn certified_cap_examples() {
        assert!((certified_cap_radius(FRAC_PI_4, 1.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!(certified_cap_bound_holds(FRAC_PI_4, 1.0, 0.0));
        assert!(matches!(certified_cap_radius(0.5, 0.0), Err(Error::PremiseViolated(_))));
        assert!(certified_cap_radius(FRAC_PI_2, 0.5).is_err());
        assert!(certified_cap_radius(0.5, 1.5).is_err());
    }

    #[test]
    fn certified_cap_is_arctan_form() {
        for &(rho, r) in &[(0.1, 0.3), (1.2, 0.05), (0.7, 1.0)] {
            let cap = certified_cap_radius(rho, r).unwrap();
            assert!((cap - (r * f64::tan(rho)).atan()).abs() < 1e-14);
        }
    }

    #[test]
    fn tan_bound_examples() {
        assert!(tan_bounds_hold(PI / 6.0));
        assert!(tan_bounds_hold(FRAC_PI_4 - 1e-6));
        assert!(tan_bounds_hold(0.3));
        assert!(tan_bounds_hold(1.5));
        assert!(!tan_bounds_hold(0.0));
        assert!(LemmaScalars::new(0.3, 0.4, 0.5).unwrap().cap_bound(0.0));
        assert!(LemmaScalars::new(0.0, 0.4, 0.5).is_err());
    }

    #[test]
    fn octahedron_is_full_sphere() {
        let c = SphericalPointSet::new(vec![
            vec![1.0, 0.0, 0.0],
            vec![-1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, -1.0],
        ])
        .unwrap();
        let cert = select_spherical(&c, 0.3).unwrap();
        assert_eq!(cert.case_tag, CaseTag::FullSphere);
        assert_eq!(cert.indices, vec![0, 1]);
        assert_eq!(cert.achieved_cap, PI);
    }

    #[test]
    fn ring_with_northern_extras() {
        let mut pts = ring(FRAC_PI_4, 4, 0.0);
        pts.extend(ring(0.3, 4, 0.4));
        let c = SphericalPointSet::new(pts).unwrap();
        let cert = select_spherical(&c, 0.6).unwrap();
        assert_eq!(cert.case_tag, CaseTag::Northern);
        assert!(cert.indices.len() <= 4);
        assert_eq!(cert.indices, vec![0, 1, 2, 3]);
        assert!((cert.achieved_cap - 0.5f64.sqrt().atan()).abs() < 1e-9);
        assert!(cert.achieved_cap >= cert.certified_cap - 1e-9);
    }

    #[test]
    fn single_point_is_rejected() {
        let c = SphericalPointSet::new(vec![vec![0.0, 0.0, 1.0]]).unwrap();
        assert!(matches!(select_spherical(&c, 0.1), Err(Error::PremiseViolated(_))));
    }

    #[test]
    fn southern_points_shift_the_center() {
        let mut pts = ring(0.6, 4, 0.0);
        pts.push(vec![1.9f64.sin(), 0.0, 1.9f64.cos()]);
        let c = SphericalPointSet::new(pts).unwrap();
        let rho = 0.3;
        let cert = select_spherical(&c, rho).unwrap();
        assert_eq!(cert.case_tag, CaseTag::General);
        assert!(cert.polarity_center_shifted);
        assert!(cert.indices.len() <= 4);
        assert!(cert.achieved_cap >= cert.certified_cap - 1e-9);
        assert!(cert.certified_cap > 0.0);
    }

    #[test]
    fn point_near_the_equator_keeps_the_pole_as_center() {
        let h: f64 = 1e-10;
        let mut pts = ring(0.6, 4, 0.0);
        pts.push(vec![(1.0 - h * h).sqrt(), 0.0, h]);
        let c = SphericalPointSet::new(pts).unwrap();
        let rho = 0.3;
        let cert = select_spherical(&c, rho).unwrap();
        assert_eq!(cert.case_tag, CaseTag::General);
        assert!(!cert.polarity_center_shifted);
        assert!(cert.indices.len() <= 4);
        let r = cert.internal_radius.unwrap();
        assert!(cert.certified_cap >= r * rho / 2.0 - 1e-12);
        assert!(cert.achieved_cap >= cert.certified_cap - 1e-9);
    }

    #[test]
    fn probe_rejects_general_input() {
        let mut pts = ring(0.5, 4, 0.0);
        pts.push(vec![0.0, 0.6, -0.8]);
        let c = SphericalPointSet::new(pts).unwrap();
        assert!(matches!(gamma_consistency_probe(&c, 0.01), Err(Error::PremiseViolated(_))));
    }

    #[test]
    fn probe_is_small_on_a_tight_ring() {
        // Cap of the ring is arctan(tan θ / √2), set just above 0.01.
        let theta = (0.0101f64.tan() * 2f64.sqrt()).atan();
        let c = SphericalPointSet::new(ring(theta, 4, 0.0)).unwrap();
        let v = gamma_consistency_probe(&c, 0.01).unwrap();
        assert!(v.abs() <= 0.05, "{v}");
    }
}
