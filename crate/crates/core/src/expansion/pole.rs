use crate::error::{Error, Result};
use crate::lattice;
use crate::potential::TrigPotential;

use super::{corrector_recursion, signed_sums, DEFAULT_ETA};

/// Straight path `Q(s) = Q* + s·d` that meets the hyperplane `w⊥` at `s = 0`.
#[derive(Debug, Clone)]
pub struct PolePath {
    pub q_star: Vec<f64>,
    pub direction: Vec<f64>,
    /// Largest sample parameter; chosen from the distance to other poles
    /// when `None`.
    pub s0: Option<f64>,
    /// Number of halvings `s0, s0/2, …` fed to the extrapolation.
    pub levels: usize,
}

impl PolePath {
    pub fn new(q_star: Vec<f64>, direction: Vec<f64>) -> Self {
        Self {
            q_star,
            direction,
            s0: None,
            levels: 8,
        }
    }

    pub fn at(&self, s: f64) -> Vec<f64> {
        self.q_star
            .iter()
            .zip(&self.direction)
            .map(|(q, d)| q + s * d)
            .collect()
    }
}

/// Extrapolates `lim_{s→0} (w·Q(s))² a_4(Q(s))` from the recursion's `a_4`
/// sampled at `s0 / 2^i` (polynomial extrapolation to `s = 0`).
///
/// `w` must be a signed sum of two distinct non-orthogonal modes, no mode may
/// be parallel to `w`, and every other frequency reachable at order 4 must stay
/// off `Q*⊥`.
pub fn a4_pole_residue(v: &TrigPotential, w: &[i64], path: &PolePath) -> Result<f64> {
    let n = v.dim();
    if w.len() != n || path.q_star.len() != n || path.direction.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: w.len().min(path.q_star.len()).min(path.direction.len()),
        });
    }
    if path.levels < 2 {
        return Err(Error::Precondition("at least two extrapolation levels are needed".into()));
    }
    let modes: Vec<Vec<i64>> = v.modes().iter().map(|m| m.k.components().to_vec()).collect();
    if !is_pair_sum(&modes, w) {
        return Err(Error::Precondition(format!(
            "{w:?} is not a signed sum of two non-orthogonal modes"
        )));
    }
    if modes.iter().any(|k| lattice::is_parallel(k, w)) {
        return Err(Error::Precondition(format!("a mode is parallel to {w:?}")));
    }
    let scale = norm(&path.q_star).max(1.0) * (lattice::norm_sq_i(w) as f64).sqrt();
    if lattice::dot_f(w, &path.q_star).abs() > 1e-12 * scale {
        return Err(Error::Precondition("Q* does not lie on the hyperplane orthogonal to w".into()));
    }
    let wd = lattice::dot_f(w, &path.direction);
    if wd == 0.0 {
        return Err(Error::Precondition("path direction is parallel to the hyperplane".into()));
    }

    let mut min_other = f64::INFINITY;
    let mut max_slope: f64 = 0.0;
    for u in signed_sums(&modes, 4) {
        if lattice::is_parallel(&u, w) {
            continue;
        }
        let uq = lattice::dot_f(&u, &path.q_star).abs();
        if uq < 1e-6 {
            return Err(Error::Resonance {
                frequency: u,
                denominator: uq,
                threshold: 1e-6,
            });
        }
        min_other = min_other.min(uq);
        max_slope = max_slope.max(lattice::dot_f(&u, &path.direction).abs());
    }
    let s0 = path.s0.unwrap_or_else(|| {
        let limit = if max_slope > 0.0 { min_other / max_slope } else { 1.0 };
        0.25 * limit.min(1.0)
    });

    let mut nodes = Vec::with_capacity(path.levels);
    let mut values = Vec::with_capacity(path.levels);
    for i in 0..path.levels {
        let s = s0 / f64::powi(2.0, i as i32);
        let q = path.at(s);
        let r = corrector_recursion(v, &q, 4, DEFAULT_ETA)?;
        let wq = lattice::dot_f(w, &q);
        nodes.push(s);
        values.push(wq * wq * r.a[4]);
    }
    Ok(neville_at_zero(&nodes, &values))
}

fn is_pair_sum(modes: &[Vec<i64>], w: &[i64]) -> bool {
    for i in 0..modes.len() {
        for j in 0..modes.len() {
            if i == j || lattice::dot_i(&modes[i], &modes[j]) == 0 {
                continue;
            }
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                if modes[i]
                    .iter()
                    .zip(&modes[j])
                    .zip(w)
                    .all(|((x, y), z)| a * x + b * y == *z)
                {
                    return true;
                }
            }
        }
    }
    false
}

fn norm(q: &[f64]) -> f64 {
    q.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Value at 0 of the interpolating polynomial through `(x_i, y_i)`.
fn neville_at_zero(x: &[f64], y: &[f64]) -> f64 {
    let mut p = y.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..(n - m) {
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{sole_residue, SignedPair};

    #[test]
    fn neville_recovers_polynomials() {
        let xs = [0.4, 0.2, 0.1, 0.05];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 - x + 3.0 * x * x * x).collect();
        assert!((neville_at_zero(&xs, &ys) - 2.5).abs() < 1e-13);
    }

    #[test]
    fn extrapolated_pole_matches_sole_residue() {
        let v = TrigPotential::from_cosines(
            2,
            0.1,
            &[(vec![3, 1], 1.0, 0.2), (vec![2, 2], 0.6, 1.4), (vec![-1, 4], 0.8, 2.9)],
        )
        .unwrap();
        let pair = SignedPair { j1: 0, j2: 1, alpha: 1, beta: 1 };
        let w = pair.vector(&v);
        let q_star = vec![-0.3 * w[1] as f64, 0.3 * w[0] as f64];
        let path = PolePath::new(q_star.clone(), vec![0.2, 0.1]);
        let got = a4_pole_residue(&v, &w, &path).unwrap();
        let want = sole_residue(&v, pair, &q_star).unwrap();
        assert!(((got - want) / want).abs() < 1e-6, "{got} vs {want}");
    }

    #[test]
    fn single_mode_has_no_pair_vectors() {
        let v = TrigPotential::from_cosines(2, 0.0, &[(vec![1, 2], 1.0, 0.0)]).unwrap();
        let path = PolePath::new(vec![-4.0, 2.0], vec![1.0, 0.0]);
        assert!(matches!(
            a4_pole_residue(&v, &[2, 4], &path),
            Err(Error::Precondition(_))
        ));
    }
}
