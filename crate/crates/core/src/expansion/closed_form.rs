use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice;
use crate::potential::TrigPotential;

/// Constant in front of the isolated pole term of `a_4`. Comparing the
/// extrapolated pole of the recursion's `a_4` against the closed form pins it
/// to 1 under the normalization `V = a_0 + Σ (λ e^{i2πk·x} + conj)`; see the
/// `sole_vector_pole_law` acceptance check.
pub const SOLE_TERM_PREFACTOR: f64 = 1.0;

/// `Σ_j |λ_j|² |k_j|² / (k_j·Q)²`.
pub fn a2_closed_form(v: &TrigPotential, q: &[f64]) -> Result<f64> {
    check_dim(v, q)?;
    let mut sum = 0.0;
    for m in v.modes() {
        let kq = m.k.dot(q);
        if kq == 0.0 {
            return Err(resonance(m.k.components(), kq));
        }
        sum += m.amplitude.norm_sqr() * m.k.norm_sq() as f64 / (kq * kq);
    }
    Ok(sum)
}

/// The signed pair sum `α k_{j1} + β k_{j2}` with `α, β ∈ {+1, −1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPair {
    pub j1: usize,
    pub j2: usize,
    pub alpha: i64,
    pub beta: i64,
}

impl SignedPair {
    pub fn vector(&self, v: &TrigPotential) -> Vec<i64> {
        let k1 = v.modes()[self.j1].k.components();
        let k2 = v.modes()[self.j2].k.components();
        k1.iter()
            .zip(k2)
            .map(|(a, b)| self.alpha * a + self.beta * b)
            .collect()
    }

    fn validate(&self, v: &TrigPotential) -> Result<()> {
        let m = v.mode_count();
        if self.j1 >= m || self.j2 >= m {
            return Err(Error::Precondition(format!(
                "mode index out of range for a potential with {m} modes"
            )));
        }
        if self.j1 == self.j2 {
            return Err(Error::Precondition("pair indices must differ".into()));
        }
        if self.alpha.abs() != 1 || self.beta.abs() != 1 {
            return Err(Error::Precondition("signs must be +1 or -1".into()));
        }
        let k1 = &v.modes()[self.j1].k;
        let k2 = &v.modes()[self.j2].k;
        if k1.dot_int(k2) == 0 {
            return Err(Error::Precondition(format!(
                "modes {k1} and {k2} are orthogonal"
            )));
        }
        Ok(())
    }
}

/// The `(w·Q)²`-free part of the isolated pole term:
/// `c |λ_1|²|λ_2|² |k_1·k_2|² |w|² / ((k_1·Q)² (k_2·Q)²)`.
pub fn sole_residue(v: &TrigPotential, pair: SignedPair, q: &[f64]) -> Result<f64> {
    check_dim(v, q)?;
    pair.validate(v)?;
    let m1 = &v.modes()[pair.j1];
    let m2 = &v.modes()[pair.j2];
    let k1q = m1.k.dot(q);
    let k2q = m2.k.dot(q);
    for (k, kq) in [(&m1.k, k1q), (&m2.k, k2q)] {
        if kq == 0.0 {
            return Err(resonance(k.components(), kq));
        }
    }
    let dot = m1.k.dot_int(&m2.k) as f64;
    let w = pair.vector(v);
    Ok(SOLE_TERM_PREFACTOR
        * m1.amplitude.norm_sqr()
        * m2.amplitude.norm_sqr()
        * dot
        * dot
        * lattice::norm_sq_i(&w) as f64
        / (k1q * k1q * k2q * k2q))
}

/// The isolated pole term of `a_4` attached to the pair sum `w`, i.e.
/// [`sole_residue`] divided by `(w·Q)²`.
pub fn sole_term(v: &TrigPotential, pair: SignedPair, q: &[f64]) -> Result<f64> {
    let residue = sole_residue(v, pair, q)?;
    let w = pair.vector(v);
    let wq = lattice::dot_f(&w, q);
    if wq == 0.0 {
        return Err(resonance(&w, wq));
    }
    Ok(residue / (wq * wq))
}

/// `lim (w·Q)² a_4(Q)` as `Q → Q*` on `w⊥`, written out directly.
///
/// Every second-order frequency `u` parallel to `w` contributes
/// `|w|² |S_u|²`, where `S_u` sums `(κ_a·κ_b) μ_a μ_b / ((κ_a·Q*)(κ_b·Q*))`
/// over the signed mode pairs `κ_a + κ_b = u` (amplitude `μ = λ` for `+k`,
/// `conj λ` for `−k`). Pairs landing on the same `u` add before squaring.
/// For a sole vector only one pair contributes and the result equals
/// [`sole_residue`].
pub fn pole_residue_closed_form(v: &TrigPotential, w: &[i64], q_star: &[f64]) -> Result<f64> {
    check_dim(v, q_star)?;
    if w.len() != v.dim() || lattice::is_zero(w) {
        return Err(Error::Precondition("w must be a nonzero vector of the potential's dimension".into()));
    }
    let mut signed: Vec<(Vec<i64>, Complex64, f64)> = Vec::new();
    for m in v.modes() {
        let kq = m.k.dot(q_star);
        if kq.abs() < super::DEFAULT_ETA {
            return Err(resonance(m.k.components(), kq));
        }
        signed.push((m.k.components().to_vec(), m.amplitude, kq));
        signed.push((m.k.negated().components().to_vec(), m.amplitude.conj(), -kq));
    }
    // S_u for every u parallel to w on the positive side
    let mut sums: Vec<(Vec<i64>, Complex64)> = Vec::new();
    for a in 0..signed.len() {
        for b in a..signed.len() {
            let (ka, ma, qa) = &signed[a];
            let (kb, mb, qb) = &signed[b];
            let u: Vec<i64> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            if !lattice::is_parallel(&u, w) || lattice::dot_i(&u, w) <= 0 {
                continue;
            }
            let weight = if a == b { 0.5 } else { 1.0 };
            let term = ma * mb * (weight * lattice::dot_i(ka, kb) as f64 / (qa * qb));
            match sums.iter_mut().find(|(k, _)| *k == u) {
                Some((_, s)) => *s += term,
                None => sums.push((u, term)),
            }
        }
    }
    let w2 = lattice::norm_sq_i(w) as f64;
    Ok(sums.iter().map(|(_, s)| w2 * s.norm_sqr()).sum())
}

fn check_dim(v: &TrigPotential, q: &[f64]) -> Result<()> {
    if q.len() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: q.len(),
        });
    }
    Ok(())
}

fn resonance(k: &[i64], kq: f64) -> Error {
    Error::Resonance {
        frequency: k.to_vec(),
        denominator: kq.abs(),
        threshold: 0.0,
    }
}
