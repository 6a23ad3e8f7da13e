use std::collections::HashMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::lattice;
use crate::potential::TrigPotential;

/// Sparse Fourier series `Σ_k c(k) e^{i2πk·x}` of a real function, with
/// both `k` and `-k` stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FourierSeries {
    dim: usize,
    coeffs: HashMap<Vec<i64>, Complex64>,
}

impl FourierSeries {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            coeffs: HashMap::new(),
        }
    }

    /// Series of the potential itself, mean included at the zero frequency.
    pub fn from_potential(v: &TrigPotential) -> Self {
        let mut s = Self::new(v.dim());
        if v.mean() != 0.0 {
            s.add(&vec![0; v.dim()], Complex64::new(v.mean(), 0.0));
        }
        for m in v.modes() {
            s.add(m.k.components(), m.amplitude);
            s.add(m.k.negated().components(), m.amplitude.conj());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, k: &[i64]) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn add(&mut self, k: &[i64], z: Complex64) {
        *self.coeffs.entry(k.to_vec()).or_default() += z;
    }

    pub fn set(&mut self, k: Vec<i64>, z: Complex64) {
        self.coeffs.insert(k, z);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn zero_mode(&self) -> Complex64 {
        self.get(&vec![0; self.dim])
    }

    /// Largest `|c(-k) - conj c(k)|` over the support.
    pub fn hermitian_defect(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, z)| {
                let neg: Vec<i64> = k.iter().map(|x| -x).collect();
                (self.get(&neg) - z.conj()).norm()
            })
            .fold(0.0, f64::max)
    }

    /// True if the support only contains sums of at most `order` of the
    /// given frequencies (with signs and repetition).
    pub fn support_within(&self, modes: &[Vec<i64>], order: usize) -> bool {
        let reachable = super::signed_sums(modes, order);
        self.coeffs
            .keys()
            .all(|k| lattice::is_zero(k) || reachable.contains(k))
    }

    /// Real part of the sum at `x`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeffs
            .iter()
            .map(|(k, z)| (z * Complex64::cis(TAU * lattice::dot_f(k, x))).re)
            .sum()
    }

    /// Gradient of the represented function at `x`.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim];
        for (k, z) in &self.coeffs {
            let w = (Complex64::new(0.0, TAU) * z * Complex64::cis(TAU * lattice::dot_f(k, x))).re;
            for (gi, &ki) in g.iter_mut().zip(k) {
                *gi += ki as f64 * w;
            }
        }
        g
    }

    /// `Σ_{k1+k2=k} (k1·k2) a(k1) b(k2)`: the Fourier coefficients of
    /// `∇A·∇B` when `a`, `b` hold gradient potentials scaled by `2πi`.
    pub fn conv_dot(a: &FourierSeries, b: &FourierSeries) -> FourierSeries {
        let mut out = FourierSeries::new(a.dim);
        let mut key = vec![0i64; a.dim];
        for (k1, z1) in &a.coeffs {
            for (k2, z2) in &b.coeffs {
                let d = lattice::dot_i(k1, k2);
                if d == 0 {
                    continue;
                }
                for ((s, x), y) in key.iter_mut().zip(k1).zip(k2) {
                    *s = x + y;
                }
                *out.coeffs.entry(key.clone()).or_default() += z1 * z2 * d as f64;
            }
        }
        out
    }

    pub fn scaled(&self, s: Complex64) -> FourierSeries {
        FourierSeries {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(k, z)| (k.clone(), z * s)).collect(),
        }
    }

    pub fn add_series(&mut self, other: &FourierSeries) {
        for (k, z) in &other.coeffs {
            self.add(k, *z);
        }
    }
}
