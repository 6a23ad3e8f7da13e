//! Exact integer-lattice helpers: gcds, parallelism, rational coordinates and
//! a unimodular diagonalization used to solve congruences on the torus.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_f(a: &[i64], q: &[f64]) -> f64 {
    a.iter().zip(q).map(|(&x, y)| x as f64 * y).sum()
}

pub fn norm_sq_i(a: &[i64]) -> i64 {
    dot_i(a, a)
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Divides out the gcd of the components. The zero vector is returned as is.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_all(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Parallel (or anti-parallel) in the sense of linear dependence of two
/// nonzero vectors: every 2x2 minor vanishes.
pub fn is_parallel(a: &[i64], b: &[i64]) -> bool {
    if is_zero(a) || is_zero(b) {
        return false;
    }
    let n = a.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if a[i] as i128 * b[j] as i128 != a[j] as i128 * b[i] as i128 {
                return false;
            }
        }
    }
    true
}

/// Returns `c` with `b = c * a`, if `b` is a rational multiple of nonzero `a`.
pub fn parallel_ratio(a: &[i64], b: &[i64]) -> Option<Rational64> {
    if !is_parallel(a, b) {
        return None;
    }
    let i = a.iter().position(|&x| x != 0)?;
    Some(Rational64::new(b[i], a[i]))
}

/// `c * v` as an integer vector, when that is integral.
pub fn scale_exact(v: &[i64], c: Rational64) -> Option<Vec<i64>> {
    v.iter()
        .map(|&x| {
            let y = c * Rational64::from_integer(x);
            y.is_integer().then(|| y.to_integer())
        })
        .collect()
}

/// Rank of a list of integer vectors, computed exactly.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let d = diagonalize(&to_matrix(rows));
    d.diagonal.iter().filter(|&&s| s != 0).count()
}

/// Coordinates of `v` in the span of `basis` (assumed linearly independent),
/// or `None` if `v` lies outside the span.
pub fn coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<Rational64>> {
    let n = v.len();
    let k = basis.len();
    // Augmented system basis^T * x = v, by exact Gaussian elimination.
    let mut m: Vec<Vec<Rational64>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational64> = basis
                .iter()
                .map(|b| Rational64::from_integer(b[r]))
                .collect();
            row.push(Rational64::from_integer(v[r]));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(k);
    for col in 0..k {
        let p = (pivot_row..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, p);
        let inv = m[pivot_row][col].recip();
        for c in col..=k {
            m[pivot_row][c] *= inv;
        }
        for r in 0..n {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=k {
                    let delta = f * m[pivot_row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| m[r][k]).collect())
}

/// Least common denominator of a list of rationals.
pub fn common_denominator(xs: &[Rational64]) -> i64 {
    xs.iter().fold(1i64, |d, x| d.lcm(x.denom()))
}

pub fn rational_abs(x: Rational64) -> Rational64 {
    x.abs()
}

fn to_matrix(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

/// Result of a unimodular diagonalization `left * A * right = diag`.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub left: Vec<Vec<i128>>,
    pub right: Vec<Vec<i128>>,
    /// Diagonal entries, `min(rows, cols)` of them; nonzero ones come first.
    pub diagonal: Vec<i128>,
}

/// Diagonalizes an integer matrix by unimodular row and column operations.
/// The divisibility chain of the full Smith form is not enforced; any diagonal
/// form is enough to solve congruences.
pub fn diagonalize(a: &[Vec<i128>]) -> Diagonalization {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.to_vec();
    let mut left = identity(rows);
    let mut right = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for (r, row) in m.iter().enumerate().skip(t) {
                for (c, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(br, bc)| x.abs() < m[br][bc].abs()) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else {
                return finish(m, left, right);
            };
            m.swap(t, pr);
            left.swap(t, pr);
            for row in m.iter_mut() {
                row.swap(t, pc);
            }
            for row in right.iter_mut() {
                row.swap(t, pc);
            }

            let p = m[t][t];
            let mut clean = true;
            for r in (t + 1)..rows {
                let q = m[r][t].div_euclid(p);
                if q != 0 {
                    for c in 0..cols {
                        m[r][c] -= q * m[t][c];
                    }
                    for c in 0..rows {
                        left[r][c] -= q * left[t][c];
                    }
                }
                clean &= m[r][t] == 0;
            }
            for c in (t + 1)..cols {
                let q = m[t][c].div_euclid(p);
                if q != 0 {
                    for r in 0..rows {
                        m[r][c] -= q * m[r][t];
                    }
                    for r in 0..cols {
                        right[r][c] -= q * right[r][t];
                    }
                }
                clean &= m[t][c] == 0;
            }
            if clean {
                break;
            }
        }
    }
    finish(m, left, right)
}

fn finish(m: Vec<Vec<i128>>, left: Vec<Vec<i128>>, right: Vec<Vec<i128>>) -> Diagonalization {
    let k = m.len().min(m.first().map_or(0, |r| r.len()));
    let diagonal = (0..k).map(|i| m[i][i]).collect();
    Diagonalization {
        left,
        right,
        diagonal,
    }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Solves `rows * x ≡ b (mod Z^m)` for real `x`, returning `x` reduced to
/// `[0,1)^n` together with the worst residual (distance of an unsatisfiable
/// congruence to the nearest integer). The residual is 0 when every
/// congruence can be met exactly.
pub fn solve_congruences(rows: &[Vec<i64>], b: &[f64], n: usize) -> (Vec<f64>, f64) {
    if rows.is_empty() {
        return (vec![0.0; n], 0.0);
    }
    let d = diagonalize(&to_matrix(rows));
    let m = rows.len();
    let ub: Vec<f64> = (0..m)
        .map(|i| {
            d.left[i]
                .iter()
                .zip(b)
                .map(|(&u, &bj)| u as f64 * bj)
                .sum()
        })
        .collect();
    let mut y = vec![0.0; n];
    let mut residual: f64 = 0.0;
    for i in 0..m {
        let s = d.diagonal.get(i).copied().unwrap_or(0);
        if s != 0 {
            y[i] = ub[i] / s as f64;
        } else {
            residual = residual.max((ub[i] - ub[i].round()).abs());
        }
    }
    let x = (0..n)
        .map(|r| {
            let v: f64 = (0..n).map(|c| d.right[r][c] as f64 * y[c]).sum();
            v.rem_euclid(1.0)
        })
        .collect();
    (x, residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn primitive_and_parallel() {
        assert_eq!(primitive(&[2, -4, 6]), vec![1, -2, 3]);
        assert!(is_parallel(&[1, 2], &[-2, -4]));
        assert!(!is_parallel(&[1, 2], &[2, 1]));
        assert!(!is_parallel(&[0, 0], &[1, 0]));
        assert_eq!(parallel_ratio(&[1, 2], &[-3, -6]), Some(Rational64::from_integer(-3)));
        assert_eq!(parallel_ratio(&[2, 4], &[1, 2]), Some(Rational64::new(1, 2)));
    }

    #[test]
    fn exact_coordinates() {
        let basis = vec![vec![3, 1], vec![2, 2]];
        let c = coordinates(&basis, &[-1, 4]).unwrap();
        // -1 = 3a + 2b, 4 = a + 2b  =>  a = -5/2, b = 13/4
        assert_eq!(c, vec![Rational64::new(-5, 2), Rational64::new(13, 4)]);
        assert!(coordinates(&[vec![1, 0, 0]], &[0, 1, 0]).is_none());
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&[vec![1, 0], vec![0, 1], vec![1, 1]]), 2);
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), 3);
    }

    #[test]
    fn diagonalization_reconstructs() {
        let a = vec![vec![2i128, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let d = diagonalize(&a);
        let prod = mat_mul(&mat_mul(&d.left, &a), &d.right);
        for (i, row) in prod.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if i != j {
                    assert_eq!(x, 0);
                } else {
                    assert_eq!(x, d.diagonal[i]);
                }
            }
        }
    }

    #[test]
    fn congruences_with_fractional_dependence() {
        // k3 = k1/2 + k2: the half-integer freedom makes this solvable.
        let rows = vec![vec![2, 0], vec![0, 1], vec![1, 1]];
        let (x, res) = solve_congruences(&rows, &[0.0, 0.0, 0.5], 2);
        assert!(res < 1e-12);
        for (r, b) in rows.iter().zip([0.0, 0.0, 0.5]) {
            let v = dot_f(r, &x) - b;
            assert!((v - v.round()).abs() < 1e-12);
        }
        // k3 = k1 + k2 exactly: 0 + 0 != 1/2.
        let rows = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let (_, res) = solve_congruences(&rows, &[0.0, 0.0, 0.5], 2);
        assert!((res - 0.5).abs() < 1e-12);
    }
}
