use std::f64::consts::{PI, TAU};

use num_rational::Rational64;

use crate::lattice;
use crate::potential::{rational_to_f64, wrap_angle, Orientation};

/// Looks for `ω = ω̃ + 2kl` (orientation preserving) or `ω = 2kl − ω̃`
/// (orientation reversing) within `tol`, for `|k| ≤ ⌈π/l⌉ + 1`.
/// `l_over_pi` is `l/π`. Preserving matches are preferred, then small `|k|`.
pub fn phase_equivalent(omega: f64, omega_tilde: f64, l_over_pi: Rational64, tol: f64) -> Option<(i64, Orientation)> {
    let l = PI * rational_to_f64(l_over_pi);
    if !(l > 0.0) {
        return None;
    }
    let range = (PI / l).ceil() as i64 + 1;
    let mut ks: Vec<i64> = (-range..=range).collect();
    ks.sort_by_key(|k| k.abs());
    for (sign, orientation) in [(1.0, Orientation::Preserving), (-1.0, Orientation::Reversing)] {
        for &k in &ks {
            let target = 2.0 * k as f64 * l + sign * omega_tilde;
            if (omega - target).abs() <= tol {
                return Some((k, orientation));
            }
        }
    }
    None
}

/// `x0 ∈ [0,1)^n` with `2π k_j·x0 ≡ Δω_j (mod 2π)` for every `j`, if one
/// exists. Rational dependencies among the modes leave discrete freedom in
/// the solution, so the congruences are solved through a unimodular
/// diagonalization of the mode matrix rather than a plain linear solve.
pub fn solve_translation(modes: &[Vec<i64>], delta_omega: &[f64], tol: f64) -> Option<Vec<f64>> {
    assert_eq!(modes.len(), delta_omega.len(), "one phase difference per mode");
    let n = modes.first().map_or(0, |k| k.len());
    let b: Vec<f64> = delta_omega.iter().map(|w| w / TAU).collect();
    let (x0, residual) = lattice::solve_congruences(modes, &b, n);
    if residual * TAU > tol {
        return None;
    }
    let ok = modes
        .iter()
        .zip(delta_omega)
        .all(|(k, w)| wrap_angle(TAU * lattice::dot_f(k, &x0) - w).abs() <= tol);
    ok.then_some(x0)
}
