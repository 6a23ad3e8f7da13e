use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::lattice;
use crate::optimize::{ascend, Taylor2};
use crate::potential::rational_to_f64;

/// `M(t) = max_θ r1 cos θ1 + r2 cos θ2 + r3 cos(α1 θ1 + α2 θ2 + t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MFunctionParams {
    pub r: [f64; 3],
    pub alpha: [Rational64; 2],
}

impl MFunctionParams {
    pub fn new(r: [f64; 3], alpha: [Rational64; 2]) -> Result<Self> {
        if r.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::Precondition("amplitudes must be positive".into()));
        }
        Ok(Self { r, alpha })
    }

    /// `l / π`.
    pub fn halfperiod(&self) -> Rational64 {
        lattice_halfperiod(self.alpha[0], self.alpha[1])
    }

    /// The half-period `l` in radians.
    pub fn l(&self) -> f64 {
        PI * rational_to_f64(self.halfperiod())
    }

    fn eval(&self, th: &[f64], t: f64) -> Taylor2 {
        let [r1, r2, r3] = self.r;
        let a1 = rational_to_f64(self.alpha[0]);
        let a2 = rational_to_f64(self.alpha[1]);
        let phi = a1 * th[0] + a2 * th[1] + t;
        let (s1, c1) = th[0].sin_cos();
        let (s2, c2) = th[1].sin_cos();
        let (s3, c3) = phi.sin_cos();
        Taylor2 {
            value: r1 * c1 + r2 * c2 + r3 * c3,
            gradient: DVector::from_vec(vec![-r1 * s1 - r3 * a1 * s3, -r2 * s2 - r3 * a2 * s3]),
            hessian: DMatrix::from_row_slice(
                2,
                2,
                &[
                    -r1 * c1 - r3 * a1 * a1 * c3,
                    -r3 * a1 * a2 * c3,
                    -r3 * a1 * a2 * c3,
                    -r2 * c2 - r3 * a2 * a2 * c3,
                ],
            ),
        }
    }
}

/// `l / π = g / d` where `α_i = n_i / d` over the least common denominator
/// and `g = gcd(d, n1, n2)`: the smallest positive value of `|m + m1 α1 + m2 α2|`.
pub fn lattice_halfperiod(alpha1: Rational64, alpha2: Rational64) -> Rational64 {
    let d = lattice::common_denominator(&[alpha1, alpha2]);
    let n1 = (alpha1 * Rational64::from_integer(d)).to_integer();
    let n2 = (alpha2 * Rational64::from_integer(d)).to_integer();
    let g = d.gcd(&n1).gcd(&n2);
    Rational64::new(g, d)
}

/// Evaluates `M(t)`. Translating `θ` by `2π` shifts the third phase by
/// `2π(α1 a + α2 b)`, whose residues mod `2π` are the multiples of `2l`; so
/// the search runs over `[0, 2π)²` for each of those shifts, on a 256-point
/// grid per axis, and refines the best points by Newton ascent.
pub fn m_function(params: &MFunctionParams, t: f64) -> f64 {
    const GRID: usize = 256;
    const KEEP: usize = 12;
    let copies = (Rational64::from_integer(1) / params.halfperiod()).to_integer().max(1);
    let two_l = TAU / copies as f64;
    let [r1, r2, r3] = params.r;
    let a1 = rational_to_f64(params.alpha[0]);
    let a2 = rational_to_f64(params.alpha[1]);
    let cos_table: Vec<f64> = (0..GRID).map(|i| (TAU * i as f64 / GRID as f64).cos()).collect();

    let mut best: Vec<(f64, [f64; 3])> = Vec::with_capacity(KEEP + 1);
    for j in 0..copies {
        let shift = t + j as f64 * two_l;
        for i1 in 0..GRID {
            let th1 = TAU * i1 as f64 / GRID as f64;
            let base = r1 * cos_table[i1];
            for i2 in 0..GRID {
                let th2 = TAU * i2 as f64 / GRID as f64;
                let v = base + r2 * cos_table[i2] + r3 * (a1 * th1 + a2 * th2 + shift).cos();
                if best.len() < KEEP || v > best[best.len() - 1].0 {
                    let pos = best.partition_point(|(b, _)| *b >= v);
                    best.insert(pos, (v, [th1, th2, shift]));
                    best.truncate(KEEP);
                }
            }
        }
    }
    best.iter()
        .map(|(v0, [th1, th2, shift])| {
            let (_, v) = ascend(|th| params.eval(th, *shift), &[*th1, *th2], 1e-13, 100);
            v.max(*v0)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `(t, M(t))` at `start, start + step, …` up to `stop` inclusive.
pub fn m_trace(params: &MFunctionParams, start: f64, stop: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if !(step > 0.0) {
        return Err(Error::Precondition("step must be positive".into()));
    }
    let count = ((stop - start) / step + 1e-9).floor().max(-1.0) as i64 + 1;
    Ok((0..count.max(0))
        .map(|i| {
            let t = start + i as f64 * step;
            (t, m_function(params, t))
        })
        .collect())
}
