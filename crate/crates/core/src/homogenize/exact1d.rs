use crate::error::{Error, Result};
use crate::potential::TrigPotential;

use super::quadrature::integrate;

fn check_1d(w: &TrigPotential) -> Result<()> {
    if w.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: w.dim(),
        });
    }
    Ok(())
}

/// `∫₀¹ √(2(h − W(x))) dx` for `h ≥ max W`.
fn action(w: &TrigPotential, h: f64, tol: f64) -> Result<f64> {
    integrate(
        |x| (2.0 * (h - w.eval_unchecked(&[x]))).max(0.0).sqrt(),
        0.0,
        1.0,
        tol,
    )
}

/// Width `p_c = ∫₀¹ √(2(max W − W)) dx` of the flat piece of `H̄` at its
/// minimum.
pub fn critical_momentum(w: &TrigPotential, quad_tol: f64) -> Result<f64> {
    check_1d(w)?;
    action(w, w.max_on_torus(256), quad_tol)
}

/// Exact `H̄(p)` in one dimension: `max W` on `|p| ≤ p_c`, otherwise the
/// energy `h` whose action `∫₀¹ √(2(h − W))` equals `|p|`, found by bisection.
pub fn hbar_1d_exact(w: &TrigPotential, p: f64, quad_tol: f64) -> Result<f64> {
    check_1d(w)?;
    if w.mode_count() == 0 {
        return Ok(0.5 * p * p + w.mean());
    }
    let max_w = w.max_on_torus(256);
    let target = p.abs();
    if action(w, max_w, quad_tol)? >= target {
        return Ok(max_w);
    }
    // Jensen gives action(½p² + mean) ≤ |p| ≤ action(½p² + max).
    let mut lo = max_w.max(0.5 * p * p + w.mean());
    let mut hi = 0.5 * p * p + max_w;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if action(w, mid, quad_tol)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
