//! Trigonometric-polynomial potentials on the torus `R^n / Z^n`.
//!
//! A potential is stored as its mean plus a list of modes. Each mode `(k, λ)`
//! stands for the real summand `λ e^{i2πk·x} + conj`, so the pair `(-k, conj λ)`
//! describes the same function and only one of the two is kept.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice;
use crate::optimize::{ascend, Taylor2};

/// Nonzero integer frequency vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeVector(Vec<i64>);

impl ModeVector {
    pub fn new(components: Vec<i64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidPotential("empty mode vector".into()));
        }
        if lattice::is_zero(&components) {
            return Err(Error::InvalidPotential("zero mode vector".into()));
        }
        Ok(Self(components))
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// True when the highest-index nonzero component is positive.
    pub fn is_canonical(&self) -> bool {
        self.0.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.negated()
        }
    }

    /// Canonical primitive representative of the line through `self`.
    pub fn direction(&self) -> Self {
        Self(lattice::primitive(&self.canonical().0))
    }

    pub fn dot(&self, q: &[f64]) -> f64 {
        lattice::dot_f(&self.0, q)
    }

    pub fn dot_int(&self, other: &ModeVector) -> i64 {
        lattice::dot_i(&self.0, &other.0)
    }

    pub fn norm_sq(&self) -> i64 {
        lattice::norm_sq_i(&self.0)
    }

    pub fn is_parallel(&self, other: &ModeVector) -> bool {
        lattice::is_parallel(&self.0, &other.0)
    }
}

impl fmt::Display for ModeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierMode {
    pub k: ModeVector,
    pub amplitude: Complex64,
}

impl FourierMode {
    pub fn new(k: ModeVector, amplitude: Complex64) -> Self {
        Self { k, amplitude }
    }

    /// Same real summand, with `k` in canonical orientation.
    pub fn canonical(&self) -> Self {
        if self.k.is_canonical() {
            self.clone()
        } else {
            Self {
                k: self.k.negated(),
                amplitude: self.amplitude.conj(),
            }
        }
    }

    pub fn real_form(&self) -> RealModeForm {
        RealModeForm {
            k: self.k.clone(),
            r: 2.0 * self.amplitude.norm(),
            omega: self.amplitude.arg().rem_euclid(TAU),
        }
    }
}

/// `r cos(2πk·x + ω)`, the real reading of a mode.
#[derive(Debug, Clone, PartialEq)]
pub struct RealModeForm {
    pub k: ModeVector,
    pub r: f64,
    pub omega: f64,
}

impl RealModeForm {
    pub fn to_mode(&self) -> FourierMode {
        FourierMode {
            k: self.k.clone(),
            amplitude: Complex64::from_polar(self.r / 2.0, self.omega),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPotential {
    dim: usize,
    mean: f64,
    modes: Vec<FourierMode>,
}

impl TrigPotential {
    /// Validates dimensions and pairwise non-parallel modes. Modes with zero
    /// amplitude are dropped before the parallelism check.
    pub fn new(dim: usize, mean: f64, modes: Vec<FourierMode>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPotential("dimension must be positive".into()));
        }
        if !mean.is_finite() {
            return Err(Error::InvalidPotential("mean is not finite".into()));
        }
        let mut kept = Vec::with_capacity(modes.len());
        for m in modes {
            if m.k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: m.k.dim(),
                });
            }
            if !(m.amplitude.re.is_finite() && m.amplitude.im.is_finite()) {
                return Err(Error::InvalidPotential(format!(
                    "amplitude of mode {} is not finite",
                    m.k
                )));
            }
            if m.amplitude != Complex64::zero() {
                kept.push(m);
            }
        }
        for i in 0..kept.len() {
            for j in (i + 1)..kept.len() {
                if kept[i].k.is_parallel(&kept[j].k) {
                    return Err(Error::InvalidPotential(format!(
                        "modes {} and {} are parallel",
                        kept[i].k, kept[j].k
                    )));
                }
            }
        }
        Ok(Self {
            dim,
            mean,
            modes: kept,
        })
    }

    pub fn constant(dim: usize, mean: f64) -> Self {
        Self {
            dim,
            mean,
            modes: Vec::new(),
        }
    }

    /// Builds from `(k, λ)` pairs.
    pub fn from_pairs(dim: usize, mean: f64, pairs: &[(Vec<i64>, Complex64)]) -> Result<Self> {
        let modes = pairs
            .iter()
            .map(|(k, a)| Ok(FourierMode::new(ModeVector::new(k.clone())?, *a)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, mean, modes)
    }

    /// Builds from `(k, r, ω)` triples meaning `r cos(2πk·x + ω)`.
    pub fn from_cosines(dim: usize, mean: f64, terms: &[(Vec<i64>, f64, f64)]) -> Result<Self> {
        let modes = terms
            .iter()
            .map(|(k, r, w)| {
                Ok(RealModeForm {
                    k: ModeVector::new(k.clone())?,
                    r: *r,
                    omega: *w,
                }
                .to_mode())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, mean, modes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn modes(&self) -> &[FourierMode] {
        &self.modes
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn real_forms(&self) -> Vec<RealModeForm> {
        self.modes.iter().map(FourierMode::real_form).collect()
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        self.mean
            + self
                .modes
                .iter()
                .map(|m| 2.0 * (m.amplitude * Complex64::cis(TAU * m.k.dot(x))).re)
                .sum::<f64>()
    }

    /// Oscillation bound `2 Σ |λ_j|·2 ≥ max V − min V`.
    pub fn oscillation_bound(&self) -> f64 {
        4.0 * self.modes.iter().map(|m| m.amplitude.norm()).sum::<f64>()
    }

    /// Largest absolute frequency component, 0 for a constant.
    pub fn max_frequency(&self) -> i64 {
        self.modes
            .iter()
            .flat_map(|m| m.k.components().iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Largest `g` dividing every mode vector, so that `V(x) = W(gx)` for an
    /// integer potential `W`; 1 for a constant.
    pub fn lattice_content(&self) -> i64 {
        let all: Vec<i64> = self.modes.iter().flat_map(|m| m.k.components().iter().copied()).collect();
        lattice::gcd_all(&all).max(1)
    }

    /// The potential `W` with `V(x) = W(gx)`, `g` being the lattice content.
    pub fn primitive_cell(&self) -> Self {
        let g = self.lattice_content();
        let modes = self
            .modes
            .iter()
            .map(|m| FourierMode {
                k: ModeVector(m.k.components().iter().map(|x| x / g).collect()),
                amplitude: m.amplitude,
            })
            .collect();
        Self {
            dim: self.dim,
            mean: self.mean,
            modes,
        }
    }

    fn taylor(&self, x: &[f64]) -> Taylor2 {
        let n = self.dim;
        let mut value = self.mean;
        let mut gradient = DVector::zeros(n);
        let mut hessian = DMatrix::zeros(n, n);
        for m in &self.modes {
            let k = m.k.components();
            let z = m.amplitude * Complex64::cis(TAU * m.k.dot(x));
            value += 2.0 * z.re;
            for a in 0..n {
                gradient[a] += -2.0 * TAU * k[a] as f64 * z.im;
                for b in 0..n {
                    hessian[(a, b)] += -2.0 * TAU * TAU * (k[a] * k[b]) as f64 * z.re;
                }
            }
        }
        Taylor2 {
            value,
            gradient,
            hessian,
        }
    }

    /// Flips every mode to canonical orientation. In two dimensions the modes
    /// are also sorted counter-clockwise by angle in `[0, π)`.
    pub fn canonicalize(&self) -> Result<Self> {
        let mut modes: Vec<FourierMode> = self.modes.iter().map(FourierMode::canonical).collect();
        for i in 0..modes.len() {
            for j in (i + 1)..modes.len() {
                if modes[i].k.is_parallel(&modes[j].k) {
                    return Err(Error::InvalidPotential(format!(
                        "modes {} and {} are parallel",
                        modes[i].k, modes[j].k
                    )));
                }
            }
        }
        if self.dim == 2 {
            modes.sort_by(|a, b| ccw_order(a.k.components(), b.k.components()));
        }
        Ok(Self {
            dim: self.dim,
            mean: self.mean,
            modes,
        })
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().is_ok_and(|c| c.modes == self.modes)
    }

    /// `W(x) = V(σx/c + x0)`. Mode order is preserved and each image mode is
    /// flipped to canonical orientation.
    pub fn transform(&self, t: &Transform) -> Result<Self> {
        if t.x0.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.x0.len(),
            });
        }
        let factor = Rational64::from_integer(t.orientation.sign()) / t.c;
        let mut modes = Vec::with_capacity(self.modes.len());
        for m in &self.modes {
            let k = lattice::scale_exact(m.k.components(), factor).ok_or_else(|| {
                Error::TransformRejected {
                    mode: m.k.components().to_vec(),
                }
            })?;
            let amplitude = m.amplitude * Complex64::cis(TAU * m.k.dot(&t.x0));
            modes.push(FourierMode::new(ModeVector(k), amplitude).canonical());
        }
        Ok(Self {
            dim: self.dim,
            mean: self.mean,
            modes,
        })
    }

    /// Maximum over the torus: a uniform grid scan followed by Newton ascent
    /// from the best grid points. The requested resolution is raised when it
    /// would under-sample the highest frequency, and lowered when the grid
    /// would exceed about four million points.
    pub fn max_on_torus(&self, resolution: usize) -> f64 {
        if self.modes.is_empty() {
            return self.mean;
        }
        let n = self.dim;
        let wanted = resolution.max(8).max(8 * self.max_frequency() as usize);
        let cap = (4_000_000f64).powf(1.0 / n as f64).floor() as usize;
        let res = wanted.min(cap.max(8));

        const KEEP: usize = 64;
        let mut best: Vec<(f64, Vec<f64>)> = Vec::with_capacity(KEEP + 1);
        let total = res.pow(n as u32);
        let mut x = vec![0.0; n];
        for idx in 0..total {
            let mut rem = idx;
            for xi in x.iter_mut() {
                *xi = (rem % res) as f64 / res as f64;
                rem /= res;
            }
            let v = self.eval_unchecked(&x);
            if best.len() < KEEP || v > best[best.len() - 1].0 {
                let pos = best.partition_point(|(b, _)| *b >= v);
                best.insert(pos, (v, x.clone()));
                best.truncate(KEEP);
            }
        }
        best.iter()
            .map(|(v0, x0)| {
                let (_, v) = ascend(|y| self.taylor(y), x0, 1e-12, 100);
                v.max(*v0)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Counter-clockwise order of canonical planar vectors (angles in `[0, π)`).
fn ccw_order(a: &[i64], b: &[i64]) -> Ordering {
    let cross = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
    0.cmp(&cross)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Preserving => 1,
            Orientation::Reversing => -1,
        }
    }

    pub fn from_sign(s: i64) -> Self {
        if s < 0 {
            Orientation::Reversing
        } else {
            Orientation::Preserving
        }
    }

    pub fn flip(self) -> Self {
        Self::from_sign(-self.sign())
    }
}

/// The map `x ↦ σx/c + x0` acting on potentials by composition.
///
/// A negative scaling is folded into the orientation, so `c` is always
/// positive after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform {
    pub c: Rational64,
    pub x0: Vec<f64>,
    pub orientation: Orientation,
}

impl Transform {
    pub fn new(c: Rational64, x0: Vec<f64>, orientation: Orientation) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidPotential("scaling c must be nonzero".into()));
        }
        let orientation = if c.is_negative() {
            orientation.flip()
        } else {
            orientation
        };
        Ok(Self {
            c: c.abs(),
            x0,
            orientation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            c: Rational64::one(),
            x0: vec![0.0; dim],
            orientation: Orientation::Preserving,
        }
    }

    /// Signed scaling `σc`.
    pub fn signed_c(&self) -> Rational64 {
        self.c * Rational64::from_integer(self.orientation.sign())
    }

    /// The point `σx/c + x0`.
    pub fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        let s = self.orientation.sign() as f64 / rational_to_f64(self.c);
        x.iter().zip(&self.x0).map(|(xi, x0)| s * xi + x0).collect()
    }

    pub fn inverse(&self) -> Self {
        let s = -(self.orientation.sign() as f64) * rational_to_f64(self.c);
        Self {
            c: self.c.recip(),
            x0: self.x0.iter().map(|v| (s * v).rem_euclid(1.0)).collect(),
            orientation: self.orientation,
        }
    }
}

pub fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Reduces an angle to `(-π, π]`.
pub fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn three_cos(phase3: f64) -> TrigPotential {
        TrigPotential::from_cosines(
            2,
            0.0,
            &[(vec![1, 0], 1.0, 0.0), (vec![0, 1], 1.0, 0.0), (vec![1, 1], 1.0, phase3)],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let v = TrigPotential::constant(3, 0.7);
        assert_eq!(v.eval(&[0.1, 0.2, 0.3]).unwrap(), 0.7);

        let v = TrigPotential::from_pairs(2, 0.0, &[(vec![1, 0], c(0.5, 0.0))]).unwrap();
        assert!((v.eval(&[0.0, 0.3]).unwrap() - 1.0).abs() < 1e-15);

        let v = three_cos(0.0);
        assert!((v.eval(&[0.25, 0.25]).unwrap() + 1.0).abs() < 1e-14);
        assert!(matches!(
            v.eval(&[0.1]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(ModeVector::new(vec![0, 0]).is_err());
        let parallel = TrigPotential::from_pairs(
            2,
            0.0,
            &[(vec![1, 2], c(0.5, 0.0)), (vec![-2, -4], c(0.1, 0.0))],
        );
        assert!(matches!(parallel, Err(Error::InvalidPotential(_))));
        let v = TrigPotential::from_pairs(
            2,
            0.0,
            &[(vec![1, 2], c(0.0, 0.0)), (vec![-2, -4], c(0.1, 0.0))],
        )
        .unwrap();
        assert_eq!(v.mode_count(), 1);
        assert!(TrigPotential::from_pairs(3, 0.0, &[(vec![1, 2], c(1.0, 0.0))]).is_err());
    }

    #[test]
    fn canonical_flip_conjugates() {
        let v = TrigPotential::from_pairs(2, 0.0, &[(vec![-1, -2], c(0.3, 0.4))]).unwrap();
        let w = v.canonicalize().unwrap();
        assert_eq!(w.modes()[0].k.components(), &[1, 2]);
        assert_eq!(w.modes()[0].amplitude, c(0.3, -0.4));
    }

    #[test]
    fn canonical_ccw_order() {
        let v = TrigPotential::from_pairs(
            2,
            0.0,
            &[
                (vec![-1, 4], c(1.0, 0.0)),
                (vec![3, 1], c(1.0, 0.0)),
                (vec![2, 2], c(1.0, 0.0)),
            ],
        )
        .unwrap();
        let w = v.canonicalize().unwrap();
        let ks: Vec<_> = w.modes().iter().map(|m| m.k.components().to_vec()).collect();
        assert_eq!(ks, vec![vec![3, 1], vec![2, 2], vec![-1, 4]]);
        assert_eq!(w.canonicalize().unwrap(), w);
        assert!(w.is_canonical());
        assert!(!v.is_canonical());
    }

    #[test]
    fn transform_examples() {
        let v = TrigPotential::from_pairs(1, 0.0, &[(vec![1], c(0.5, 0.0))]).unwrap();
        assert_eq!(v.transform(&Transform::identity(1)).unwrap(), v);

        let half = Transform::new(Rational64::new(1, 2), vec![0.0], Orientation::Preserving).unwrap();
        let w = v.transform(&half).unwrap();
        assert_eq!(w.modes()[0].k.components(), &[2]);

        let two = Transform::new(Rational64::from_integer(2), vec![0.0], Orientation::Preserving).unwrap();
        assert!(matches!(v.transform(&two), Err(Error::TransformRejected { .. })));
    }

    #[test]
    fn transform_matches_pointwise_and_inverts() {
        let v = three_cos(0.4);
        let t = Transform::new(Rational64::new(-1, 3), vec![0.21, 0.77], Orientation::Preserving).unwrap();
        assert_eq!(t.orientation, Orientation::Reversing);
        let w = v.transform(&t).unwrap();
        for x in [[0.1, 0.2], [0.73, 0.05], [0.5, 0.9]] {
            let lhs = w.eval(&x).unwrap();
            let rhs = v.eval(&t.apply_point(&x)).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
        let back = w.transform(&t.inverse()).unwrap();
        for (a, b) in back.modes().iter().zip(v.modes()) {
            assert_eq!(a.k, b.k);
            assert!((a.amplitude - b.amplitude).norm() < 1e-12);
        }
    }

    #[test]
    fn real_form_round_trip() {
        let m = FourierMode::new(ModeVector::new(vec![2, -1]).unwrap(), c(-0.3, 0.25));
        let back = m.real_form().to_mode();
        assert!((back.amplitude - m.amplitude).norm() < 1e-15);
        assert!(m.real_form().omega >= 0.0 && m.real_form().omega < TAU);
    }

    #[test]
    fn torus_maxima() {
        let v = TrigPotential::from_cosines(2, 0.0, &[(vec![1, 0], 1.0, 0.0), (vec![0, 1], 1.0, 0.0)]).unwrap();
        assert!((v.max_on_torus(32) - 2.0).abs() < 1e-9);
        assert_eq!(TrigPotential::constant(2, 0.7).max_on_torus(8), 0.7);
        // fine brute-force grid as an independent oracle
        let v = three_cos(PI / 2.0);
        let mut brute = f64::NEG_INFINITY;
        let n = 2000;
        for i in 0..n {
            for j in 0..n {
                let x = [i as f64 / n as f64, j as f64 / n as f64];
                brute = brute.max(v.eval(&x).unwrap());
            }
        }
        let m = v.max_on_torus(64);
        assert!(m >= brute - 1e-12 && m - brute < 1e-4, "{m} vs {brute}");
    }
}
