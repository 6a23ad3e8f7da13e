//! Local maximization of smooth functions with analytic derivatives.

use nalgebra::{DMatrix, DVector};

/// Value, gradient and Hessian at a point.
pub struct Taylor2 {
    pub value: f64,
    pub gradient: DVector<f64>,
    pub hessian: DMatrix<f64>,
}

/// Newton ascent with a gradient-step fallback wherever the Hessian is not
/// negative definite. Every accepted step increases the objective, so the
/// returned value is never below the starting value.
pub fn ascend<F>(f: F, start: &[f64], tol: f64, max_iter: usize) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> Taylor2,
{
    let mut x = DVector::from_column_slice(start);
    let mut cur = f(x.as_slice());
    for _ in 0..max_iter {
        let g = &cur.gradient;
        if g.amax() < tol {
            break;
        }
        // Newton steps are tried at full length first; plain gradient steps
        // start small because their scale carries no curvature information.
        let (dir, mut step) = match (-cur.hessian.clone()).cholesky() {
            Some(ch) => (ch.solve(g), 1.0),
            None => (g.clone(), 1.0 / (1.0 + cur.hessian.amax())),
        };
        let slope = g.dot(&dir);
        let mut accepted = false;
        for _ in 0..60 {
            let trial = &x + &dir * step;
            let next = f(trial.as_slice());
            if next.value >= cur.value + 1e-4 * step * slope {
                x = trial;
                cur = next;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (x.as_slice().to_vec(), cur.value)
}
