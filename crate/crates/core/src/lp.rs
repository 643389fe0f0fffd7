//! Linear programs behind the membership and centering predicates, solved
//! with `microlp`. Callers never trust the solver's feasibility verdict
//! alone: weights are read back and the residual is recomputed here.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use crate::linalg::norm;

#[derive(Debug, Clone)]
pub(crate) struct ConvexWeights {
    pub weights: Vec<f64>,
    /// Euclidean distance between the recombined point and the target.
    pub residual: f64,
}

fn recombine(points: &[&[f64]], weights: &[f64], target: &[f64]) -> f64 {
    let mut r: Vec<f64> = target.iter().map(|t| -t).collect();
    for (p, w) in points.iter().zip(weights) {
        for (ri, pi) in r.iter_mut().zip(p.iter()) {
            *ri += w * pi;
        }
    }
    norm(&r)
}

/// Convex weights expressing `target` from `points`, minimising the linear
/// `cost` when given. `None` when the solver reports infeasibility.
pub(crate) fn convex_combination(points: &[&[f64]], target: &[f64], cost: Option<&[f64]>) -> Option<ConvexWeights> {
    let dim = target.len();
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> =
        (0..points.len()).map(|i| problem.add_var(cost.map_or(0.0, |c| c[i]), (0.0, f64::INFINITY))).collect();
    for k in 0..dim {
        let row: Vec<_> = vars.iter().zip(points).map(|(&v, p)| (v, p[k])).collect();
        problem.add_constraint(row.as_slice(), ComparisonOp::Eq, target[k]);
    }
    let ones: Vec<_> = vars.iter().map(|&v| (v, 1.0)).collect();
    problem.add_constraint(ones.as_slice(), ComparisonOp::Eq, 1.0);

    let solution = problem.solve().ok()?.into_solution().ok()?;
    let mut weights: Vec<f64> = vars.iter().map(|&v| solution.var_value(v).max(0.0)).collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return None;
    }
    weights.iter_mut().for_each(|w| *w /= total);
    let residual = recombine(points, &weights, target);
    Some(ConvexWeights { weights, residual })
}

/// Largest `t` with `t · direction ∈ conv(points)`; `None` when the line
/// through the origin misses the hull.
pub(crate) fn ray_extent(points: &[&[f64]], direction: &[f64]) -> Option<f64> {
    let dim = direction.len();
    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = (0..points.len()).map(|_| problem.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let t = problem.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
    for k in 0..dim {
        let mut row: Vec<_> = vars.iter().zip(points).map(|(&v, p)| (v, p[k])).collect();
        row.push((t, -direction[k]));
        problem.add_constraint(row.as_slice(), ComparisonOp::Eq, 0.0);
    }
    let ones: Vec<_> = vars.iter().map(|&v| (v, 1.0)).collect();
    problem.add_constraint(ones.as_slice(), ComparisonOp::Eq, 1.0);
    let solution = problem.solve().ok()?.into_solution().ok()?;
    Some(solution.var_value(t))
}

/// Center and radius of the largest ball inside `{z : ⟨a_i, z⟩ ≤ b_i}`.
/// `None` when the region is empty or contains arbitrarily large balls.
pub(crate) fn chebyshev_center(normals: &[&[f64]], offsets: &[f64], dim: usize) -> Option<(Vec<f64>, f64)> {
    let mut problem = Problem::new(OptimizationDirection::Maximize);
    let z: Vec<_> = (0..dim).map(|_| problem.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let t = problem.add_var(1.0, (0.0, f64::INFINITY));
    for (a, &b) in normals.iter().zip(offsets) {
        let mut row: Vec<_> = z.iter().zip(a.iter()).map(|(&v, &c)| (v, c)).collect();
        row.push((t, norm(a)));
        problem.add_constraint(row.as_slice(), ComparisonOp::Le, b);
    }
    let solution = problem.solve().ok()?.into_solution().ok()?;
    let center = z.iter().map(|&v| solution.var_value(v)).collect();
    Some((center, solution.var_value(t)))
}
