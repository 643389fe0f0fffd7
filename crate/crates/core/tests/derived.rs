//! Worked examples checked against independent oracles.

mod common;

use std::f64::consts::{FRAC_PI_4, PI};

use common::{euclid_set, ring, sphere_set};
use steinitz_core::oracles::{exhaustive_best_subset, mc_cap_contained, mc_containment_radius_refined, SubsetScorer};
use steinitz_core::sphere::north_pole;
use steinitz_core::workbench::{gen_euclid, gen_sphere, InstanceFile};
use steinitz_core::{
    containment_radius, gamma_consistency_probe, largest_cap_about_axis, polar_max_norm, qht_select, select_exact,
    select_greedy, select_spherical, Cap, CaseTag, EuclideanPointSet, RandomSource, SelectionConfig,
};

fn ring_cap() -> f64 {
    (FRAC_PI_4.tan() / 2f64.sqrt()).atan()
}

/// Largest cap radius about the pole, to within `tol`, whose sampled points
/// all fall in the hull. Sampling can only miss a violation, so the result
/// never lies below the true value by more than `tol`.
fn sampled_cap_radius(c: &steinitz_core::SphericalPointSet, samples: usize, tol: f64) -> f64 {
    let north = north_pole(c.ambient_dim());
    let (mut lo, mut hi) = (0.0, PI / 2.0);
    let mut step = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let mut rng = RandomSource::new(0xcab, step);
        if mc_cap_contained(c, &Cap::new(north.clone(), mid).unwrap(), samples, &mut rng) {
            lo = mid;
        } else {
            hi = mid;
        }
        step += 1;
    }
    lo
}

#[test]
fn ring_cap_matches_sampled_membership() {
    let c = sphere_set(ring(FRAC_PI_4, 4, 0.0));
    let sampled = sampled_cap_radius(&c, 100_000, 1e-4);
    assert!((sampled - 0.61548).abs() < 2e-3, "{sampled}");
    let exact = largest_cap_about_axis(&c, &north_pole(3)).unwrap();
    assert!((exact - ring_cap()).abs() < 1e-9);
    assert!(sampled >= exact - 1e-4 && sampled <= exact + 2e-3, "{sampled} vs {exact}");
}

#[test]
fn polar_extent_is_reciprocal_of_sampled_radius() {
    let mut rng = RandomSource::new(8, 0);
    for _ in 0..10 {
        let q = common::interior_instance(2, 8, &mut rng);
        let extent = polar_max_norm(&q).unwrap().bounded().unwrap();
        let estimate = mc_containment_radius_refined(&q, 10_000, &mut rng);
        assert!((extent * estimate - 1.0).abs() < 1e-6, "{extent} · {estimate}");
    }
}

#[test]
fn square_with_far_point_selects_the_corners() {
    let q = euclid_set(&[&[1.0, 1.0], &[1.0, -1.0], &[-1.0, 1.0], &[-1.0, -1.0], &[2.0, 0.0]]);
    let cert = select_exact(&q).unwrap();
    assert_eq!(cert.indices, vec![0, 1, 2, 3]);
    assert!((cert.achieved_radius - 1.0).abs() < 1e-9);

    let (best, score) = exhaustive_best_subset(SubsetScorer::EuclidRadius(&q), 4).unwrap();
    assert_eq!(best, vec![0, 1, 2, 3]);
    assert!((score - 1.0).abs() < 1e-6, "{score}");
}

#[test]
fn exact_selection_is_optimal_on_small_planar_instances() {
    for n in 4..=9 {
        for seed in 0..4 {
            let q = gen_euclid(2, n, seed).unwrap().euclidean_set().unwrap();
            let cert = select_exact(&q).unwrap();
            let (_, score) = exhaustive_best_subset(SubsetScorer::EuclidRadius(&q), 4).unwrap();
            assert!(
                (cert.achieved_radius - score).abs() <= 1e-6,
                "n={n} seed={seed}: {} vs {score}",
                cert.achieved_radius
            );
        }
    }
}

#[test]
fn oracle_and_engine_agree_up_to_twelve_points() {
    for n in 4..=12 {
        let q = gen_euclid(2, n, 100 + n as u64).unwrap().euclidean_set().unwrap();
        let cert = select_exact(&q).unwrap();
        let (_, score) = exhaustive_best_subset(SubsetScorer::EuclidRadius(&q), 4).unwrap();
        assert!((cert.achieved_radius - score).abs() <= 1e-3, "n={n}: {} vs {score}", cert.achieved_radius);
    }
}

/// Containment radius of points on a circle of radius `radius` about the
/// origin, from the widest angular gap between neighbours.
fn circle_radius(radius: f64, points: &[Vec<f64>]) -> f64 {
    let mut angles: Vec<f64> = points.iter().map(|p| p[1].atan2(p[0])).collect();
    angles.sort_by(f64::total_cmp);
    let mut gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    for w in angles.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    if gap >= PI {
        0.0
    } else {
        radius * (gap / 2.0).cos()
    }
}

#[test]
fn greedy_on_a_circle_keeps_the_unit_ball() {
    let pts: Vec<Vec<f64>> = (0..64)
        .map(|k| {
            let a = k as f64 * 2.0 * PI / 64.0;
            vec![2.0 * a.cos(), 2.0 * a.sin()]
        })
        .collect();
    let q = EuclideanPointSet::new(pts).unwrap();
    let cert = select_greedy(&q).unwrap();
    assert_eq!(cert.indices.len(), 4);
    let chosen = q.subset(&cert.indices).unwrap();
    let closed_form = circle_radius(2.0, chosen.points());
    assert!(closed_form >= 1.0, "{closed_form}");
    assert!((cert.achieved_radius - closed_form).abs() < 1e-9);
    assert!((containment_radius(&chosen).unwrap() - closed_form).abs() < 1e-9);
}

#[test]
fn helly_selection_bounds_the_polar() {
    let mut rng = RandomSource::new(21, 0);
    for _ in 0..8 {
        let raw = common::interior_instance(2, 10, &mut rng);
        let l = raw.scaled(1.0 / containment_radius(&raw).unwrap());
        assert!(polar_max_norm(&l).unwrap().bounded().unwrap() <= 1.0 + 1e-9);
        let sel = qht_select(&l, &SelectionConfig::default()).unwrap();
        assert!(sel.indices.len() <= 4);
        let chosen = l.subset(&sel.indices).unwrap();
        let extent = polar_max_norm(&chosen).unwrap().bounded().unwrap();
        assert!(extent <= sel.guaranteed_polar_radius + 1e-9);
        // Sampled directions only overestimate the radius of the selection.
        let estimate = mc_containment_radius_refined(&chosen, 10_000, &mut rng);
        assert!(1.0 / estimate <= sel.guaranteed_polar_radius + 1e-9);
        assert!((estimate * sel.guaranteed_polar_radius - 1.0).abs() < 1e-6);
    }
}

#[test]
fn ring_with_extras_matches_best_subset() {
    let mut pts = ring(FRAC_PI_4, 4, 0.0);
    pts.extend(ring(0.3, 4, 0.4));
    let c = sphere_set(pts);
    let cert = select_spherical(&c, 0.6).unwrap();
    assert_eq!(cert.case_tag, CaseTag::Northern);
    assert!(cert.indices.len() <= 4);

    let north = north_pole(3);
    let (best, score) = exhaustive_best_subset(SubsetScorer::CapAboutAxis(&c, &north), 4).unwrap();
    assert_eq!(best, vec![0, 1, 2, 3]);
    assert!((score - ring_cap()).abs() < 1e-3, "{score}");
    assert!((cert.achieved_cap - score).abs() < 1e-3, "{} vs {score}", cert.achieved_cap);
}

/// A tight ring whose cap is just above `rho`, with northern extras inside
/// it placed at the same relative positions for every `rho`.
fn probe_instance(rho: f64) -> steinitz_core::SphericalPointSet {
    let theta = ((1.01 * rho).tan() * 2f64.sqrt()).atan();
    let mut rng = RandomSource::new(77, 0);
    let mut pts = ring(theta, 4, 0.0);
    for _ in 0..4 {
        let colat = theta * rng.uniform(0.0, 0.5);
        let phi = rng.uniform(0.0, 2.0 * PI);
        pts.push(vec![colat.sin() * phi.cos(), colat.sin() * phi.sin(), colat.cos()]);
    }
    sphere_set(pts)
}

#[test]
fn probe_shrinks_with_the_cap() {
    let coarse = gamma_consistency_probe(&probe_instance(0.01), 0.01).unwrap();
    let fine = gamma_consistency_probe(&probe_instance(0.001), 0.001).unwrap();
    assert!(coarse.abs() <= 0.05, "{coarse}");
    assert!(fine.abs() < coarse.abs(), "{fine} vs {coarse}");
}

#[test]
fn generated_euclidean_instance_holds_its_premise() {
    let inst = gen_euclid(2, 8, 42).unwrap();
    let reloaded = InstanceFile::from_json(&inst.to_json().unwrap()).unwrap();
    assert_eq!(reloaded, inst);
    let q = reloaded.euclidean_set().unwrap();
    assert_eq!(q.len(), 8);
    assert!(containment_radius(&q).unwrap() >= 1.0 - 1e-9);
    let mut rng = RandomSource::new(5, 0);
    assert!(mc_containment_radius_refined(&q, 10_000, &mut rng) >= 1.0 - 1e-9);
}

#[test]
fn generated_spherical_instances_land_in_their_cases() {
    for (southern, case) in [(0.0, CaseTag::Northern), (0.4, CaseTag::General)] {
        let inst = gen_sphere(2, 10, 0.5, 7, southern).unwrap();
        let c = inst.spherical_set().unwrap();
        let north = north_pole(3);
        assert!(largest_cap_about_axis(&c, &north).unwrap() >= 0.5 - 1e-9);
        let mut rng = RandomSource::new(11, 0);
        assert!(mc_cap_contained(&c, &Cap::new(north, 0.5).unwrap(), 20_000, &mut rng));
        let has_southern = c.points().iter().any(|p| p[2] <= 0.0);
        assert_eq!(has_southern, southern > 0.0);
        assert_eq!(select_spherical(&c, 0.5).unwrap().case_tag, case);
    }
}
