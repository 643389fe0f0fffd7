//! Empirical minima of the selection ratios over generated instances,
//! reported next to the known bracket `[1/(6d²), 1/(2√d)]`.

use serde::{Deserialize, Serialize};

use super::generate::{gen_euclid, gen_sphere};
use super::WbResult;
use crate::oracles::RandomSource;
use crate::pipeline::select_spherical_with;
use crate::steinitz::{select_auto, Method, RBound, SelectionConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub selection: SelectionConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchEntry {
    pub dim: usize,
    pub trials: usize,
    pub points_per_instance: usize,
    /// Selector used on every Euclidean trial, or `None` when it varied.
    pub method: Option<Method>,
    pub min_achieved_radius: f64,
    /// Smallest `achieved_cap / ρ` over the spherical trials.
    pub min_cap_ratio: f64,
    pub bracket_lower: f64,
    pub bracket_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub seed: u64,
    pub entries: Vec<BenchEntry>,
}

/// Points per generated instance in dimension `d`.
fn points_for(d: usize) -> usize {
    2 * d + 4
}

pub fn run_bench(cfg: &BenchConfig) -> WbResult<BenchReport> {
    let mut entries = Vec::new();
    for &d in &cfg.dims {
        let n = points_for(d);
        let mut rng = RandomSource::new(cfg.seed, d as u64);
        let mut min_radius = f64::INFINITY;
        let mut min_ratio = f64::INFINITY;
        let mut methods = Vec::new();
        for trial in 0..cfg.trials {
            let seed = cfg.seed.wrapping_add((d as u64) << 32).wrapping_add(trial as u64);
            let q = gen_euclid(d, n, seed)?.euclidean_set()?;
            let cert = select_auto(&q, &cfg.selection)?;
            min_radius = min_radius.min(cert.achieved_radius);
            methods.push(cert.method);

            let rho = rng.uniform(0.1, 1.0);
            let southern = if trial % 2 == 0 { 0.0 } else { 0.3 };
            let c = gen_sphere(d, n, rho, seed, southern)?.spherical_set()?;
            let sc = select_spherical_with(&c, rho, &cfg.selection)?;
            min_ratio = min_ratio.min(sc.achieved_cap / rho);
        }
        let bound = RBound::for_dim(d);
        let method = methods.first().copied().filter(|m| methods.iter().all(|x| x == m));
        entries.push(BenchEntry {
            dim: d,
            trials: cfg.trials,
            points_per_instance: n,
            method,
            min_achieved_radius: min_radius,
            min_cap_ratio: min_ratio,
            bracket_lower: bound.lower,
            bracket_upper: bound.upper,
        });
    }
    Ok(BenchReport { schema_version: super::SCHEMA_VERSION, seed: cfg.seed, entries })
}
