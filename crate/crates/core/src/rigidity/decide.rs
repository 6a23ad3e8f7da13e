use std::f64::consts::TAU;
use std::fmt;

use num_rational::Rational64;

use crate::lattice;
use crate::potential::{rational_to_f64, FourierMode, Orientation, Transform, TrigPotential};

use super::mfunction::lattice_halfperiod;
use super::phase::{phase_equivalent, solve_translation};

/// Phase and amplitude tolerance of the decision procedure.
pub const DECISION_TOL: f64 = 1e-9;

/// Tolerance on the reduced third phase, which mixes three phases with
/// rational weights and so carries a few ulps more rounding.
const REDUCED_PHASE_TOL: f64 = 1e-8;

/// Why two potentials cannot share an effective Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Witness {
    MeanMismatch,
    DirectionMismatch,
    AmplitudeMismatch,
    NoCommonScaling,
    PhaseConditionFailed,
}

impl Witness {
    pub fn as_str(self) -> &'static str {
        match self {
            Witness::MeanMismatch => "mean-mismatch",
            Witness::DirectionMismatch => "direction-mismatch",
            Witness::AmplitudeMismatch => "amplitude-mismatch",
            Witness::NoCommonScaling => "no-common-scaling",
            Witness::PhaseConditionFailed => "phase-condition-failed",
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// `V1(x) = V2(σx/c + x0)`. `mode_pairing` lists `(i, j)` with mode `i`
    /// of the first potential matched to mode `j` of the second.
    TransformEquivalent {
        transform: Transform,
        mode_pairing: Vec<(usize, usize)>,
    },
    /// Same effective Hamiltonian although mode `j` of the second potential
    /// is mode `i` of the first scaled by its own factor.
    EffectivelyEqual {
        scalings: Vec<Rational64>,
        mode_pairing: Vec<(usize, usize)>,
    },
    NotEquivalent {
        witness: Witness,
        detail: String,
    },
    OutOfScope {
        reason: String,
    },
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::TransformEquivalent { .. } => "TransformEquivalent",
            Verdict::EffectivelyEqual { .. } => "EffectivelyEqual",
            Verdict::NotEquivalent { .. } => "NotEquivalent",
            Verdict::OutOfScope { .. } => "OutOfScope",
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(
            self,
            Verdict::TransformEquivalent { .. } | Verdict::EffectivelyEqual { .. }
        )
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            Verdict::NotEquivalent { witness, .. } => Some(*witness),
            _ => None,
        }
    }
}

fn not_equivalent(witness: Witness, detail: impl Into<String>) -> Verdict {
    Verdict::NotEquivalent {
        witness,
        detail: detail.into(),
    }
}

/// True if `transform` maps `v2` onto `v1`: same mean and, mode by mode, the
/// same frequency and amplitude within [`DECISION_TOL`].
pub fn certify(v1: &TrigPotential, v2: &TrigPotential, transform: &Transform) -> bool {
    let Ok(image) = v2.transform(transform) else {
        return false;
    };
    if (image.mean() - v1.mean()).abs() > DECISION_TOL || image.mode_count() != v1.mode_count() {
        return false;
    }
    v1.modes().iter().all(|m| {
        let m = m.canonical();
        image
            .modes()
            .iter()
            .any(|w| w.k == m.k && (w.amplitude - m.amplitude).norm() <= DECISION_TOL)
    })
}

struct Matched {
    a: Vec<FourierMode>,
    b: Vec<FourierMode>,
    /// `b[j].k = c_j a[j].k` after reordering `b` to follow `a`.
    c: Vec<Rational64>,
    pairing: Vec<(usize, usize)>,
}

impl Matched {
    fn common_c(&self) -> Option<Rational64> {
        let first = *self.c.first()?;
        self.c.iter().all(|&x| x == first).then_some(first)
    }

    /// Solves for a translation with the given scaling and orientation.
    fn transform(&self, c: Rational64, orientation: Orientation) -> Option<Transform> {
        let rows: Vec<Vec<i64>> = self.b.iter().map(|m| m.k.components().to_vec()).collect();
        let targets: Vec<f64> = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(ma, mb)| {
                let (w1, w2) = (ma.amplitude.arg(), mb.amplitude.arg());
                match orientation {
                    Orientation::Preserving => w1 - w2,
                    Orientation::Reversing => -w1 - w2,
                }
            })
            .collect();
        let x0 = solve_translation(&rows, &targets, DECISION_TOL)?;
        Transform::new(c, x0, orientation).ok()
    }
}

fn scaling_list(c: &[Rational64]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Decides whether two potentials with at most three modes have the same
/// effective Hamiltonian, returning the equivalence transform when one
/// exists.
pub fn decide(v1: &TrigPotential, v2: &TrigPotential) -> Verdict {
    if v1.dim() != v2.dim() {
        return Verdict::OutOfScope {
            reason: format!("dimensions differ ({} vs {})", v1.dim(), v2.dim()),
        };
    }
    let (m1, m2) = (v1.mode_count(), v2.mode_count());
    if m1 > 3 || m2 > 3 {
        return Verdict::OutOfScope {
            reason: format!("decisions cover at most three modes (got {m1} and {m2})"),
        };
    }
    if m1 != m2 {
        return not_equivalent(
            Witness::DirectionMismatch,
            format!("mode counts differ ({m1} vs {m2}); a2 has a pole orthogonal to every mode, so the mode directions are determined by the effective Hamiltonian"),
        );
    }
    if (v1.mean() - v2.mean()).abs() > DECISION_TOL {
        return not_equivalent(
            Witness::MeanMismatch,
            format!("means differ ({} vs {})", v1.mean(), v2.mean()),
        );
    }

    let a: Vec<FourierMode> = v1.modes().iter().map(FourierMode::canonical).collect();
    let b_all: Vec<FourierMode> = v2.modes().iter().map(FourierMode::canonical).collect();
    let mut b = Vec::with_capacity(a.len());
    let mut pairing = Vec::with_capacity(a.len());
    let mut c = Vec::with_capacity(a.len());
    for (i, ma) in a.iter().enumerate() {
        let dir = ma.k.direction();
        let Some(j) = b_all.iter().position(|mb| mb.k.direction() == dir) else {
            return not_equivalent(
                Witness::DirectionMismatch,
                format!("no mode of the second potential is parallel to {}", ma.k),
            );
        };
        let mb = &b_all[j];
        let (ra, rb) = (ma.amplitude.norm(), mb.amplitude.norm());
        if (ra - rb).abs() > DECISION_TOL * ra.max(rb).max(1.0) {
            return not_equivalent(
                Witness::AmplitudeMismatch,
                format!("|λ| differs on direction {dir}: {ra} vs {rb}"),
            );
        }
        let ratio = lattice::parallel_ratio(ma.k.components(), mb.k.components())
            .expect("same direction implies parallel");
        b.push(mb.clone());
        pairing.push((i, j));
        c.push(ratio);
    }
    let matched = Matched { a, b, c, pairing };

    let verdict = classify(&matched, v1.dim());
    if let Verdict::TransformEquivalent { transform, .. } = &verdict {
        if !certify(v1, v2, transform) {
            return Verdict::OutOfScope {
                reason: "internal: recovered transform failed self-certification".into(),
            };
        }
    }
    verdict
}

fn transform_equivalent(m: &Matched, c: Rational64, orientation: Orientation) -> Verdict {
    match m.transform(c, orientation) {
        Some(t) => Verdict::TransformEquivalent {
            transform: t,
            mode_pairing: m.pairing.clone(),
        },
        None => Verdict::OutOfScope {
            reason: "internal: independent congruences reported unsolvable".into(),
        },
    }
}

fn effectively_equal(m: &Matched) -> Verdict {
    Verdict::EffectivelyEqual {
        scalings: m.c.clone(),
        mode_pairing: m.pairing.clone(),
    }
}

fn no_common_scaling(m: &Matched, what: &str) -> Verdict {
    not_equivalent(
        Witness::NoCommonScaling,
        format!("{what} need one common scaling, found {}", scaling_list(&m.c)),
    )
}

fn classify(m: &Matched, dim: usize) -> Verdict {
    let ks: Vec<&[i64]> = m.a.iter().map(|x| x.k.components()).collect();
    let orth = |i: usize, j: usize| lattice::dot_i(ks[i], ks[j]) == 0;
    match ks.len() {
        0 => Verdict::TransformEquivalent {
            transform: Transform::identity(dim),
            mode_pairing: Vec::new(),
        },
        1 => transform_equivalent(m, m.c[0], Orientation::Preserving),
        2 => match m.common_c() {
            Some(c) => transform_equivalent(m, c, Orientation::Preserving),
            None if orth(0, 1) => effectively_equal(m),
            None => no_common_scaling(m, "two non-orthogonal modes"),
        },
        _ => {
            let rows: Vec<Vec<i64>> = ks.iter().map(|k| k.to_vec()).collect();
            if lattice::rank(&rows) == 3 {
                classify_independent(m, orth(0, 1), orth(0, 2), orth(1, 2))
            } else {
                classify_planar(m)
            }
        }
    }
}

fn classify_independent(m: &Matched, o01: bool, o02: bool, o12: bool) -> Verdict {
    if let Some(c) = m.common_c() {
        return transform_equivalent(m, c, Orientation::Preserving);
    }
    if o01 && o02 && o12 {
        return effectively_equal(m);
    }
    // one mode orthogonal to the other two, which are coupled
    let isolated = [(1, 2, o01 && o02 && !o12), (0, 2, o01 && o12 && !o02), (0, 1, o02 && o12 && !o01)];
    for (p, q, applies) in isolated {
        if applies {
            return if m.c[p] == m.c[q] {
                effectively_equal(m)
            } else {
                no_common_scaling(m, "the coupled pair of modes")
            };
        }
    }
    no_common_scaling(m, "three independent, not mutually orthogonal modes")
}

fn classify_planar(m: &Matched) -> Verdict {
    let Some(c) = m.common_c() else {
        return no_common_scaling(m, "three coplanar modes");
    };
    let basis = vec![m.a[0].k.components().to_vec(), m.a[1].k.components().to_vec()];
    let Some(alpha) = lattice::coordinates(&basis, m.a[2].k.components()) else {
        return Verdict::OutOfScope {
            reason: "internal: coplanar mode outside the span of the other two".into(),
        };
    };
    let l_over_pi = lattice_halfperiod(alpha[0], alpha[1]);
    let two_l = TAU * rational_to_f64(l_over_pi);
    let reduced = |modes: &[FourierMode]| {
        let w: Vec<f64> = modes.iter().map(|x| x.amplitude.arg()).collect();
        let phi = w[2] - rational_to_f64(alpha[0]) * w[0] - rational_to_f64(alpha[1]) * w[1];
        phi.rem_euclid(two_l)
    };
    let (phi1, phi2) = (reduced(&m.a), reduced(&m.b));
    match phase_equivalent(phi1, phi2, l_over_pi, REDUCED_PHASE_TOL) {
        Some((_, orientation)) => transform_equivalent(m, c, orientation),
        None => not_equivalent(
            Witness::PhaseConditionFailed,
            format!(
                "reduced phases {phi1} and {phi2} are not equivalent modulo 2l = {two_l} (alpha = {}, {})",
                alpha[0], alpha[1]
            ),
        ),
    }
}
