//! Small dense linear algebra used by the enumeration routines.
//!
//! Everything here works on plain `&[f64]` slices. Dimensions never exceed a
//! handful of coordinates, so the helpers favour clarity over blocking.

use nalgebra::DMatrix;

/// Systems whose condition number exceeds this are treated as singular.
pub const COND_LIMIT: f64 = 1e12;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scaled(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Returns `a / |a|`, or `None` for the zero vector.
pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| scaled(a, 1.0 / n))
}

/// Angle between two unit vectors, robust near 0 and π.
pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    let diff = norm(&sub(a, b));
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x + y) * (x + y)).sum::<f64>().sqrt();
    2.0 * diff.atan2(sum)
}

fn matrix_from_rows(rows: &[&[f64]], m: usize) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(m.max(rows.len()), m);
    for (i, r) in rows.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            a[(i, j)] = *v;
        }
    }
    a
}

/// Unit vector orthogonal to each of the `m - 1` rows, when those rows are
/// linearly independent. Returns `None` for rank-deficient or
/// ill-conditioned rows.
pub fn null_vector(rows: &[&[f64]], m: usize) -> Option<Vec<f64>> {
    debug_assert_eq!(rows.len() + 1, m);
    match m {
        0 => None,
        1 => Some(vec![1.0]),
        2 => {
            let r = rows[0];
            normalized(&[-r[1], r[0]])
        }
        3 => {
            let (a, b) = (rows[0], rows[1]);
            let n = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            let scale = norm(a) * norm(b);
            if scale == 0.0 || norm(&n) <= scale / COND_LIMIT {
                return None;
            }
            normalized(&n)
        }
        _ => {
            let svd = matrix_from_rows(rows, m).svd(false, true);
            let v_t = svd.v_t?;
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
            let largest = svd.singular_values[order[0]];
            let second_smallest = svd.singular_values[order[m - 2]];
            if second_smallest <= 0.0 || largest / second_smallest > COND_LIMIT {
                return None;
            }
            let k = order[m - 1];
            normalized(&v_t.row(k).iter().copied().collect::<Vec<_>>())
        }
    }
}

/// Unit vector orthogonal to all `rows`, taken from the smallest singular
/// value. With `m` or more rows, `None` unless the rows are numerically rank
/// deficient.
pub fn orthogonal_direction(rows: &[&[f64]], m: usize) -> Option<Vec<f64>> {
    if m == 0 {
        return None;
    }
    let padded = matrix_from_rows(rows, m).resize(rows.len().max(m), m, 0.0);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t?;
    let k = (0..m).min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j])).expect("m > 0");
    if rows.len() >= m {
        let max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        if svd.singular_values[k] > max / COND_LIMIT {
            return None;
        }
    }
    normalized(&v_t.row(k).iter().copied().collect::<Vec<_>>())
}

/// Numerical rank of the given vectors.
pub fn rank(vectors: &[&[f64]], m: usize) -> usize {
    if vectors.is_empty() || m == 0 {
        return 0;
    }
    let sv = matrix_from_rows(vectors, m).singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > max / COND_LIMIT).count()
}

/// Solves the square system `rows · x = rhs` by fully pivoted LU. Returns
/// `None` when the pivot ratio exceeds [`COND_LIMIT`].
pub fn solve_square(rows: &[&[f64]], rhs: &[f64]) -> Option<Vec<f64>> {
    let m = rhs.len();
    let a = matrix_from_rows(rows, m);
    let lu = a.full_piv_lu();
    let u = lu.u();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..m {
        let p = u[(i, i)].abs();
        lo = lo.min(p);
        hi = hi.max(p);
    }
    if lo == 0.0 || hi / lo > COND_LIMIT {
        return None;
    }
    let b = nalgebra::DVector::from_column_slice(rhs);
    let x = lu.solve(&b)?;
    x.iter().all(|v| v.is_finite()).then(|| x.iter().copied().collect())
}

/// Orthonormal basis of the complement of a unit vector.
pub fn tangent_basis(axis: &[f64]) -> Vec<Vec<f64>> {
    let m = axis.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m.saturating_sub(1));
    let mut spanned = vec![axis.to_vec()];
    // Standard basis vectors, least aligned with the axis first.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| axis[i].abs().total_cmp(&axis[j].abs()));
    for i in order {
        if basis.len() + 1 == m {
            break;
        }
        let mut v = vec![0.0; m];
        v[i] = 1.0;
        for b in &spanned {
            let c = dot(&v, b);
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk -= c * bk;
            }
        }
        if let Some(u) = normalized(&v).filter(|_| norm(&v) > 1e-6) {
            spanned.push(u.clone());
            basis.push(u);
        }
    }
    basis
}

/// Non-negative least squares: minimises `|Σ λ_i cols_i − target|` over
/// `λ ≥ 0` by the Lawson–Hanson active-set method. Returns the weights and
/// the Euclidean residual.
pub fn nnls(cols: &[&[f64]], target: &[f64]) -> (Vec<f64>, f64) {
    let k = cols.len();
    let mut lambda = vec![0.0; k];
    if k == 0 {
        return (lambda, norm(target));
    }
    let gram: Vec<f64> = (0..k * k).map(|ij| dot(cols[ij / k], cols[ij % k])).collect();
    let b: Vec<f64> = cols.iter().map(|c| dot(c, target)).collect();
    let scale = cols.iter().map(|c| norm(c)).fold(0.0, f64::max) * norm(target);
    let tol = 1e-13 * scale.max(f64::MIN_POSITIVE);

    let mut passive = vec![false; k];
    let mut blocked = vec![false; k];
    let gradient = |lambda: &[f64]| -> Vec<f64> {
        (0..k).map(|i| b[i] - (0..k).map(|j| gram[i * k + j] * lambda[j]).sum::<f64>()).collect()
    };

    for _ in 0..(3 * k + 10) {
        let w = gradient(&lambda);
        let entering =
            (0..k).filter(|&j| !passive[j] && !blocked[j] && w[j] > tol).max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = entering else { break };
        passive[j] = true;

        for _ in 0..(3 * k + 10) {
            let idx: Vec<usize> = (0..k).filter(|&i| passive[i]).collect();
            let sub_rows: Vec<Vec<f64>> = idx.iter().map(|&r| idx.iter().map(|&c| gram[r * k + c]).collect()).collect();
            let row_refs: Vec<&[f64]> = sub_rows.iter().map(Vec::as_slice).collect();
            let rhs: Vec<f64> = idx.iter().map(|&i| b[i]).collect();
            let Some(z) = solve_square(&row_refs, &rhs) else {
                // Column dependent on the passive set; it cannot help.
                passive[j] = false;
                blocked[j] = true;
                break;
            };
            if z.iter().all(|&v| v > 0.0) {
                for (&i, &v) in idx.iter().zip(&z) {
                    lambda[i] = v;
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (&i, &v) in idx.iter().zip(&z) {
                if v <= 0.0 {
                    alpha = alpha.min(lambda[i] / (lambda[i] - v));
                }
            }
            for (&i, &v) in idx.iter().zip(&z) {
                lambda[i] += alpha * (v - lambda[i]);
                if lambda[i] <= 1e-15 * (1.0 + v.abs()) {
                    lambda[i] = 0.0;
                    passive[i] = false;
                }
            }
        }
        blocked.iter_mut().for_each(|f| *f = false);
    }

    let mut r = target.iter().map(|t| -t).collect::<Vec<_>>();
    for (c, l) in cols.iter().zip(&lambda) {
        for (ri, ci) in r.iter_mut().zip(c.iter()) {
            *ri += l * ci;
        }
    }
    (lambda, norm(&r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_vector_is_orthogonal_in_every_dimension() {
        for m in 2..=6 {
            let rows: Vec<Vec<f64>> = (0..m - 1)
                .map(|i| (0..m).map(|j| ((i * 7 + j * 3) % 5) as f64 - 1.5 + (i == j) as u8 as f64).collect())
                .collect();
            let refs: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
            let n = null_vector(&refs, m).unwrap();
            assert!((norm(&n) - 1.0).abs() < 1e-12);
            for r in &rows {
                assert!(dot(r, &n).abs() < 1e-10, "m={m}");
            }
        }
    }

    #[test]
    fn null_vector_rejects_dependent_rows() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [2.0, 4.0, 6.0, 8.0];
        let c = [0.0, 1.0, 0.0, 1.0];
        assert!(null_vector(&[&a, &b, &c], 4).is_none());
        assert!(null_vector(&[&a[..3], &b[..3]], 3).is_none());
    }

    #[test]
    fn solve_square_and_singular_detection() {
        let x = solve_square(&[&[2.0, 0.0], &[0.0, 4.0]], &[1.0, 1.0]).unwrap();
        assert_eq!(x, vec![0.5, 0.25]);
        assert!(solve_square(&[&[1.0, 1.0], &[1.0, 1.0]], &[1.0, 1.0]).is_none());
    }

    #[test]
    fn nnls_cone_membership() {
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let (l, r) = nnls(&[&e1, &e2], &[0.3, 0.4, 0.0]);
        assert!(r < 1e-14);
        assert!((l[0] - 0.3).abs() < 1e-14 && (l[1] - 0.4).abs() < 1e-14);
        let (_, r) = nnls(&[&e1, &e2], &[-0.3, 0.4, 0.0]);
        assert!((r - 0.3).abs() < 1e-12);
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        let axis = normalized(&[0.3, -0.2, 0.9, 0.1]).unwrap();
        let basis = tangent_basis(&axis);
        assert_eq!(basis.len(), 3);
        for (i, u) in basis.iter().enumerate() {
            assert!(dot(u, &axis).abs() < 1e-12);
            for v in &basis[i + 1..] {
                assert!(dot(u, v).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn angle_between_is_accurate_near_zero() {
        let a = [1.0, 0.0];
        let b = [1e-9f64.cos(), 1e-9f64.sin()];
        assert!((angle_between(&a, &b) - 1e-9).abs() < 1e-20);
    }
}
