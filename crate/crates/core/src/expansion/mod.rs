//! Large-momentum expansion of the effective Hamiltonian.
//!
//! With `H̄^ε(Q) = ε H̄(Q/√ε)` and the ansatz `Q + Σ_l ε^l Dv_l`, matching
//! powers of `ε` in `½|Q + Dφ|² + εV = Σ_l ε^l a_l` gives at order `l`
//!
//! ```text
//! Q·Dv_l + ½ Σ_{i+j=l} Dv_i·Dv_j + [l = 1] V = a_l .
//! ```
//!
//! The recursion works with `G_l = 2πi v̂_l`, for which the gradient
//! coefficient of `Dv_l` at frequency `k` is `k G_l(k)`.

mod closed_form;
mod pole;
mod series;

use std::collections::HashSet;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::potential::TrigPotential;

pub use closed_form::{a2_closed_form, pole_residue_closed_form, sole_residue, sole_term, SignedPair};
pub use pole::{a4_pole_residue, PolePath};
pub use series::FourierSeries;

/// Default resonance threshold on `|k·Q|`.
pub const DEFAULT_ETA: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub q: Vec<f64>,
    pub order: usize,
    /// `a_0, …, a_L`.
    pub a: Vec<f64>,
    /// Fourier coefficients of the correctors `v_1, …, v_L`.
    pub correctors: Vec<FourierSeries>,
    pub min_denominator: f64,
    /// Largest imaginary part met when taking the real zero modes `a_l`.
    pub imaginary_residue: f64,
}

impl ExpansionResult {
    /// `Σ_{l ≤ L} ε^l a_l`.
    pub fn series_value(&self, eps: f64) -> f64 {
        self.a.iter().rev().fold(0.0, |acc, a| acc * eps + a)
    }

    /// Gradient-scaled coefficients `G_l = 2πi v̂_l` for `l = 1..=L`.
    pub fn gradient_series(&self) -> Vec<FourierSeries> {
        let s = Complex64::new(0.0, std::f64::consts::TAU);
        self.correctors.iter().map(|v| v.scaled(s)).collect()
    }

    /// Residual `½|Q + Dφ_ε|² + εV − Σ ε^l a_l` of the truncated ansatz
    /// `φ_ε = Σ ε^l v_l`, at `x`.
    pub fn residual_at(&self, v: &TrigPotential, eps: f64, x: &[f64]) -> f64 {
        let n = self.q.len();
        let mut dphi = vec![0.0; n];
        let mut pow = 1.0;
        for corr in &self.correctors {
            pow *= eps;
            for (d, g) in dphi.iter_mut().zip(corr.gradient(x)) {
                *d += pow * g;
            }
        }
        // ½|Q|² = a_0 cancels analytically; the rest is O(ε).
        let q_dphi: f64 = self.q.iter().zip(&dphi).map(|(q, d)| q * d).sum();
        let half_sq: f64 = 0.5 * dphi.iter().map(|d| d * d).sum::<f64>();
        let rhs = self.series_value(eps) - self.a[0];
        q_dphi + half_sq + eps * v.eval_unchecked(x) - rhs
    }

    /// Sup of `|residual_at|` over the given points.
    pub fn residual_sup(&self, v: &TrigPotential, eps: f64, points: &[Vec<f64>]) -> f64 {
        points
            .iter()
            .map(|x| self.residual_at(v, eps, x).abs())
            .fold(0.0, f64::max)
    }
}

/// All nonzero `Σ c_j k_j` with `1 ≤ Σ|c_j| ≤ order`.
pub(crate) fn signed_sums(modes: &[Vec<i64>], order: usize) -> HashSet<Vec<i64>> {
    let mut out = HashSet::new();
    if modes.is_empty() {
        return out;
    }
    let n = modes[0].len();
    let mut acc = vec![0i64; n];
    fn rec(
        modes: &[Vec<i64>],
        j: usize,
        budget: usize,
        used: usize,
        acc: &mut Vec<i64>,
        out: &mut HashSet<Vec<i64>>,
    ) {
        if j == modes.len() {
            if used > 0 && !lattice::is_zero(acc) {
                out.insert(acc.clone());
            }
            return;
        }
        let b = budget as i64;
        for c in -b..=b {
            for (a, k) in acc.iter_mut().zip(&modes[j]) {
                *a += c * k;
            }
            rec(modes, j + 1, budget - c.unsigned_abs() as usize, used + c.unsigned_abs() as usize, acc, out);
            for (a, k) in acc.iter_mut().zip(&modes[j]) {
                *a -= c * k;
            }
        }
    }
    rec(modes, 0, order, 0, &mut acc, &mut out);
    out
}

fn mode_list(v: &TrigPotential) -> Vec<Vec<i64>> {
    v.modes().iter().map(|m| m.k.components().to_vec()).collect()
}

/// Smallest `|k·Q|` over nonzero signed sums `k` of at most `order` modes.
/// Infinite when the potential has no modes.
pub fn check_nonresonant(v: &TrigPotential, q: &[f64], order: usize) -> f64 {
    signed_sums(&mode_list(v), order)
        .iter()
        .map(|k| lattice::dot_f(k, q).abs())
        .fold(f64::INFINITY, f64::min)
}

/// Exact variant of [`check_nonresonant`] for rational `Q`; `None` when the
/// potential has no modes.
pub fn check_nonresonant_exact(v: &TrigPotential, q: &[Rational64], order: usize) -> Option<Rational64> {
    signed_sums(&mode_list(v), order)
        .iter()
        .map(|k| {
            k.iter()
                .zip(q)
                .map(|(&ki, qi)| Rational64::from_integer(ki) * qi)
                .fold(Rational64::zero(), |a, b| a + b)
                .abs()
        })
        .min()
}

/// Runs the order-by-order recursion up to order `order`.
pub fn corrector_recursion(v: &TrigPotential, q: &[f64], order: usize, eta: f64) -> Result<ExpansionResult> {
    if order < 1 {
        return Err(Error::InvalidOrder(order));
    }
    if q.len() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: q.len(),
        });
    }
    if q.iter().all(|&x| x == 0.0) {
        return Err(Error::Precondition("Q must be nonzero".into()));
    }
    let min_denominator = check_nonresonant(v, q, order);
    if min_denominator < eta {
        let worst = signed_sums(&mode_list(v), order)
            .into_iter()
            .min_by(|a, b| {
                lattice::dot_f(a, q)
                    .abs()
                    .total_cmp(&lattice::dot_f(b, q).abs())
            })
            .unwrap_or_default();
        return Err(Error::Resonance {
            frequency: worst,
            denominator: min_denominator,
            threshold: eta,
        });
    }

    let n = v.dim();
    let zero = vec![0i64; n];
    let mut a = Vec::with_capacity(order + 1);
    a.push(0.5 * q.iter().map(|x| x * x).sum::<f64>());
    let mut grads: Vec<FourierSeries> = Vec::with_capacity(order);
    let mut imaginary_residue: f64 = 0.0;

    for l in 1..=order {
        let mut g = if l == 1 {
            FourierSeries::from_potential(v)
        } else {
            FourierSeries::new(n)
        };
        for i in 1..l {
            let j = l - i;
            if i > j {
                break;
            }
            let mut prod = FourierSeries::conv_dot(&grads[i - 1], &grads[j - 1]);
            if i == j {
                prod = prod.scaled(Complex64::new(0.5, 0.0));
            }
            g.add_series(&prod);
        }
        let g0 = g.get(&zero);
        imaginary_residue = imaginary_residue.max(g0.im.abs());
        a.push(g0.re);

        // Solve on canonical frequencies, then mirror: G(-k) = -conj G(k).
        let mut next = FourierSeries::new(n);
        for (k, z) in g.iter() {
            if lattice::is_zero(k) {
                continue;
            }
            let last = k.iter().rev().find(|&&x| x != 0).copied().unwrap_or(0);
            if last < 0 {
                continue;
            }
            let kq = lattice::dot_f(k, q);
            let val = -z / kq;
            let neg: Vec<i64> = k.iter().map(|x| -x).collect();
            next.set(neg, -val.conj());
            next.set(k.clone(), val);
        }
        grads.push(next);
    }

    let inv = Complex64::new(0.0, -1.0 / std::f64::consts::TAU);
    let correctors = grads.iter().map(|g| g.scaled(inv)).collect();
    Ok(ExpansionResult {
        q: q.to_vec(),
        order,
        a,
        correctors,
        min_denominator,
        imaginary_residue,
    })
}

/// [`corrector_recursion`] with resonance decided exactly on a rational `Q`.
/// Exact resonance is reported regardless of `eta`; the coefficients are then
/// computed in floating point.
pub fn corrector_recursion_exact_q(
    v: &TrigPotential,
    q: &[Rational64],
    order: usize,
    eta: f64,
) -> Result<ExpansionResult> {
    if let Some(m) = check_nonresonant_exact(v, q, order) {
        if m.is_zero() {
            return Err(Error::Resonance {
                frequency: Vec::new(),
                denominator: 0.0,
                threshold: eta,
            });
        }
    }
    let qf: Vec<f64> = q.iter().map(|&r| crate::potential::rational_to_f64(r)).collect();
    corrector_recursion(v, &qf, order, eta)
}
