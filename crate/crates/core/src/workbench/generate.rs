//! Seeded instance generators. Every instance is checked against its
//! premise before it is returned.

use std::f64::consts::FRAC_PI_2;

use super::instance::{CapSpec, InstanceFile, InstanceKind, Metadata, SCHEMA_VERSION};
use super::{WbResult, WorkbenchError};
use crate::euclid::{ball_in_hull, EuclideanPointSet};
use crate::oracles::RandomSource;
use crate::sphere::{largest_cap_about_axis, north_pole, spolar_empty, SphericalPointSet};

const EUCLID_RADII: (f64, f64) = (1.05, 3.0);

/// Random directions tried before the full-sphere generator gives up.
const FULL_SPHERE_ATTEMPTS: usize = 10_000;

fn usage(msg: impl Into<String>) -> WorkbenchError {
    WorkbenchError::Usage(msg.into())
}

fn euclid_premise(points: &[Vec<f64>]) -> WbResult<bool> {
    Ok(ball_in_hull(&EuclideanPointSet::new(points.to_vec())?, 1.0, 0.0)?)
}

/// `n` points in `R^dim` at random directions and radii in `[1.05, 3]`
/// whose hull contains the unit ball. If the random points alone do not
/// contain it, a randomly rotated cross-polytope of inradius 1.05 is added
/// and random points are dropped again until `n` remain.
pub fn gen_euclid(dim: usize, n: usize, seed: u64) -> WbResult<InstanceFile> {
    if dim < 2 {
        return Err(usage(format!("dim must be at least 2, got {dim}")));
    }
    if n < 2 * dim {
        return Err(usage(format!("need at least 2·dim = {} points, got {n}", 2 * dim)));
    }
    let mut rng = RandomSource::new(seed, 0);
    let mut points: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let r = rng.uniform(EUCLID_RADII.0, EUCLID_RADII.1);
            rng.unit_vector(dim).into_iter().map(|x| r * x).collect()
        })
        .collect();

    if !euclid_premise(&points)? {
        let reach = EUCLID_RADII.0 * (dim as f64).sqrt();
        let frame = rng.orthonormal_frame(dim);
        let cross: Vec<Vec<f64>> =
            frame.iter().flat_map(|axis| [1.0, -1.0].map(|s| axis.iter().map(|x| s * reach * x).collect())).collect();
        // Drop random points, in random order, as long as the premise
        // survives the removal.
        let mut extras = points;
        let mut order: Vec<usize> = (0..extras.len()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.index(i + 1));
        }
        let mut removed = vec![false; extras.len()];
        let mut to_remove = 2 * dim;
        for &i in &order {
            if to_remove == 0 {
                break;
            }
            removed[i] = true;
            let trial: Vec<Vec<f64>> = extras
                .iter()
                .zip(&removed)
                .filter(|(_, &r)| !r)
                .map(|(p, _)| p.clone())
                .chain(cross.iter().cloned())
                .collect();
            if euclid_premise(&trial)? {
                to_remove -= 1;
            } else {
                removed[i] = false;
            }
        }
        if to_remove > 0 {
            return Err(WorkbenchError::Verification("could not trim the augmented instance".into()));
        }
        extras = extras.into_iter().zip(&removed).filter(|(_, &r)| !r).map(|(p, _)| p).collect();
        points = extras.into_iter().chain(cross).collect();
    }
    if !euclid_premise(&points)? {
        return Err(WorkbenchError::Verification("generated instance misses the unit ball".into()));
    }
    Ok(InstanceFile {
        schema_version: SCHEMA_VERSION,
        kind: InstanceKind::Euclidean,
        dim,
        points,
        cap: None,
        premise_radius: Some(1.0),
        metadata: Metadata { generator: "gen_euclid".into(), seed: Some(seed), rotation: None },
    })
}

/// Point at colatitude `theta` from the pole in the tangent direction `dir`.
fn at_colatitude(theta: f64, dir: &[f64]) -> Vec<f64> {
    let (s, c) = theta.sin_cos();
    dir.iter().map(|x| s * x).chain(std::iter::once(c)).collect()
}

/// `n` points on `S^dim` whose hull contains the cap of radius `rho` about
/// the north pole. A ring of `2·dim` points (a rotated cross-polytope in the
/// tangent directions) carries a cap slightly larger than `rho`; the rest are
/// random, with about `southern_fraction · n` of them just below the
/// equator, within a quarter turn of a common longitude.
pub fn gen_sphere(dim: usize, n: usize, rho: f64, seed: u64, southern_fraction: f64) -> WbResult<InstanceFile> {
    if dim < 2 {
        return Err(usage(format!("dim must be at least 2, got {dim}")));
    }
    if !(rho > 0.0 && rho < FRAC_PI_2) {
        return Err(usage(format!("rho must lie in (0, π/2), got {rho}")));
    }
    if !(0.0..1.0).contains(&southern_fraction) {
        return Err(usage(format!("southern_fraction must lie in [0, 1), got {southern_fraction}")));
    }
    if n < 2 * dim {
        return Err(usage(format!("need at least 2·dim = {} points, got {n}", 2 * dim)));
    }
    let mut rng = RandomSource::new(seed, 0);
    // A ring at colatitude θ holds the cap arctan(tan θ / √dim).
    let target = (1.05 * rho).min((rho + FRAC_PI_2) / 2.0);
    let theta = ((dim as f64).sqrt() * target.tan()).atan();
    let mut points: Vec<Vec<f64>> = rng
        .orthonormal_frame(dim)
        .iter()
        .flat_map(|axis| [1.0, -1.0].map(|s| axis.iter().map(|x| s * x).collect::<Vec<f64>>()))
        .map(|dir| at_colatitude(theta, &dir))
        .collect();

    let extras = n - 2 * dim;
    let southern = ((southern_fraction * n as f64).round() as usize).min(extras);
    let northern_reach = (2.0 * theta).min(FRAC_PI_2 - 0.05);
    for _ in 0..extras - southern {
        let colat = rng.uniform(0.0, northern_reach);
        let dir = rng.unit_vector(dim);
        points.push(at_colatitude(colat, &dir));
    }
    if southern > 0 {
        let heading = rng.unit_vector(dim);
        for _ in 0..southern {
            // Tangent direction within π/4 of `heading`.
            let dir = loop {
                let v = rng.unit_vector(dim);
                if v.iter().zip(&heading).map(|(a, b)| a * b).sum::<f64>() >= std::f64::consts::FRAC_1_SQRT_2 {
                    break v;
                }
            };
            let colat = FRAC_PI_2 + rng.uniform(0.02, 0.6);
            points.push(at_colatitude(colat, &dir));
        }
    }
    let points = SphericalPointSet::new(points)?.points().to_vec();
    let inst = spherical_instance(dim, points, rho, "gen_sphere", seed);
    check_cap(&inst)?;
    Ok(inst)
}

/// `n` uniform points on `S^dim` that fit in no open hemisphere, redrawn
/// until they do. `rho` is only recorded as the instance's cap.
pub fn gen_full_sphere(dim: usize, n: usize, rho: f64, seed: u64) -> WbResult<InstanceFile> {
    if dim < 2 {
        return Err(usage(format!("dim must be at least 2, got {dim}")));
    }
    if n < dim + 2 {
        return Err(usage(format!("need at least dim + 2 = {} points, got {n}", dim + 2)));
    }
    if !(rho > 0.0 && rho < FRAC_PI_2) {
        return Err(usage(format!("rho must lie in (0, π/2), got {rho}")));
    }
    let mut rng = RandomSource::new(seed, 0);
    for _ in 0..FULL_SPHERE_ATTEMPTS {
        let points: Vec<Vec<f64>> = (0..n).map(|_| rng.unit_vector(dim + 1)).collect();
        let c = SphericalPointSet::new(points)?;
        if spolar_empty(&c) {
            let inst = spherical_instance(dim, c.points().to_vec(), rho, "gen_full_sphere", seed);
            check_cap(&inst)?;
            return Ok(inst);
        }
    }
    Err(WorkbenchError::Verification(format!(
        "no full-sphere sample of {n} points found in {FULL_SPHERE_ATTEMPTS} attempts"
    )))
}

fn spherical_instance(dim: usize, points: Vec<Vec<f64>>, rho: f64, generator: &str, seed: u64) -> InstanceFile {
    InstanceFile {
        schema_version: SCHEMA_VERSION,
        kind: InstanceKind::Spherical,
        dim,
        points,
        cap: Some(CapSpec { axis: north_pole(dim + 1), rho }),
        premise_radius: None,
        metadata: Metadata { generator: generator.into(), seed: Some(seed), rotation: None },
    }
}

fn check_cap(inst: &InstanceFile) -> WbResult<()> {
    let c = inst.spherical_set()?;
    let cap = largest_cap_about_axis(&c, &north_pole(inst.dim + 1))?;
    if cap < inst.rho()? {
        return Err(WorkbenchError::Verification(format!("generated instance holds a cap of only {cap}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::containment_radius;

    #[test]
    fn euclid_examples() {
        let inst = gen_euclid(2, 8, 42).unwrap();
        assert_eq!(inst.points.len(), 8);
        assert!(containment_radius(&inst.euclidean_set().unwrap()).unwrap() >= 1.0);
        assert!(matches!(gen_euclid(2, 3, 1), Err(WorkbenchError::Usage(_))));
        assert_eq!(gen_euclid(2, 8, 42).unwrap(), inst);
    }

    #[test]
    fn euclid_augmentation_keeps_size() {
        for seed in 0..40 {
            let inst = gen_euclid(3, 6, seed).unwrap();
            assert_eq!(inst.points.len(), 6);
            assert!(containment_radius(&inst.euclidean_set().unwrap()).unwrap() >= 1.0);
        }
    }

    #[test]
    fn sphere_examples() {
        let north = gen_sphere(2, 10, 0.5, 7, 0.0).unwrap();
        assert_eq!(north.points.len(), 10);
        assert!(north.points.iter().all(|p| p[2] > 0.0));
        let mixed = gen_sphere(2, 10, 0.5, 7, 0.4).unwrap();
        assert_eq!(mixed.points.iter().filter(|p| p[2] < 0.0).count(), 4);
        assert!(gen_sphere(2, 10, 1.6, 7, 0.0).is_err());
        assert_eq!(gen_sphere(2, 10, 0.5, 7, 0.4).unwrap(), mixed);
    }

    #[test]
    fn full_sphere_instances_have_empty_polar() {
        let inst = gen_full_sphere(2, 8, 0.5, 3).unwrap();
        assert!(spolar_empty(&inst.spherical_set().unwrap()));
    }
}
