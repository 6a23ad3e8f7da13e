//! Cross-validation of a rigidity verdict against independent numerics.
//!
//! [`run_verify`] decides the pair, then gathers the evidence each verdict
//! predicts: torus maxima, `H̄` on a shared momentum grid, and the expansion
//! coefficients `a_1`, `a_2`, `a_4` at random non-resonant `Q`. The report is
//! consistent when that evidence agrees with the verdict within the
//! configured tolerances. Contradictions are reported, never raised.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::expansion::{check_nonresonant, corrector_recursion, DEFAULT_ETA};
use crate::homogenize::{hbar_grid, SolverConfig};
use crate::potential::TrigPotential;
use crate::rigidity::{decide, Verdict, Witness};

const TORUS_RESOLUTION: usize = 256;
const MIN_DENOMINATOR: f64 = 1e-3;
const MAXIMA_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Grid points per dimension for `H̄` in one and two dimensions.
    pub grid: usize,
    /// Grid points per dimension for `H̄` in three dimensions.
    pub grid_3d: usize,
    /// Momenta at which `H̄` is compared; `None` selects [`default_p_grid`].
    pub p_grid: Option<Vec<Vec<f64>>>,
    pub seed: u64,
    pub expansion_points: usize,
    pub hbar_tol: f64,
    pub max_gap: f64,
    pub coeff_rel_tol: f64,
    pub horizon: Option<f64>,
    pub resolution_check: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid: 96,
            grid_3d: 32,
            p_grid: None,
            seed: 7,
            expansion_points: 3,
            hbar_tol: 5e-2,
            max_gap: 1e-2,
            coeff_rel_tol: 1e-8,
            horizon: None,
            resolution_check: false,
        }
    }
}

impl VerifyConfig {
    fn solver(&self, dim: usize) -> SolverConfig {
        let n = if dim >= 3 { self.grid_3d } else { self.grid };
        SolverConfig {
            horizon: self.horizon,
            resolution_check: self.resolution_check,
            ..SolverConfig::with_grid(n)
        }
    }
}

/// `{-1, 0, 1}^n` for `n ≤ 2`; the origin and `±e_i` for `n = 3`; empty
/// beyond, where the grid solver does not run.
pub fn default_p_grid(dim: usize) -> Vec<Vec<f64>> {
    match dim {
        1 | 2 => {
            let mut out = vec![Vec::new()];
            for _ in 0..dim {
                out = out
                    .into_iter()
                    .flat_map(|p: Vec<f64>| {
                        [-1.0, 0.0, 1.0].map(|x| {
                            let mut q = p.clone();
                            q.push(x);
                            q
                        })
                    })
                    .collect();
            }
            out
        }
        3 => {
            let mut out = vec![vec![0.0; 3]];
            for i in 0..3 {
                for s in [-1.0, 1.0] {
                    let mut p = vec![0.0; 3];
                    p[i] = s;
                    out.push(p);
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HbarComparison {
    pub p: Vec<f64>,
    pub first: f64,
    pub second: f64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientComparison {
    pub q: Vec<f64>,
    /// `(a_1, a_2, a_4)` of the first potential.
    pub first: [f64; 3],
    pub second: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub verdict: Verdict,
    pub torus_max: (f64, f64),
    pub hbar: Vec<HbarComparison>,
    pub max_hbar_discrepancy: Option<f64>,
    pub coefficients: Vec<CoefficientComparison>,
    pub checks: Vec<Check>,
    pub consistent: bool,
}

fn differs(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() > rel * x.abs().max(y.abs()).max(1e-12)
}

fn random_q(v1: &TrigPotential, v2: &TrigPotential, rng: &mut ChaCha8Rng) -> Option<Vec<f64>> {
    (0..10_000).find_map(|_| {
        let q: Vec<f64> = (0..v1.dim()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let ok = check_nonresonant(v1, &q, 4) >= MIN_DENOMINATOR && check_nonresonant(v2, &q, 4) >= MIN_DENOMINATOR;
        ok.then_some(q)
    })
}

fn coefficients(v: &TrigPotential, q: &[f64]) -> Result<[f64; 3]> {
    let e = corrector_recursion(v, q, 4, DEFAULT_ETA)?;
    Ok([e.a[1], e.a[2], e.a[4]])
}

/// Decides `v1` against `v2` and checks the verdict against numerics.
pub fn run_verify(v1: &TrigPotential, v2: &TrigPotential, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let verdict = decide(v1, v2);
    let torus_max = (v1.max_on_torus(TORUS_RESOLUTION), v2.max_on_torus(TORUS_RESOLUTION));
    let same_dim = v1.dim() == v2.dim();

    let mut hbar = Vec::new();
    if same_dim && (1..=3).contains(&v1.dim()) {
        let ps = cfg.p_grid.clone().unwrap_or_else(|| default_p_grid(v1.dim()));
        let solver = cfg.solver(v1.dim());
        let h1 = hbar_grid(v1, &ps, &solver)?;
        let h2 = hbar_grid(v2, &ps, &solver)?;
        hbar = h1
            .into_iter()
            .zip(h2)
            .map(|(a, b)| HbarComparison {
                p: a.p,
                first: a.value,
                second: b.value,
                error_estimate: a.error_estimate.max(b.error_estimate),
            })
            .collect();
    }
    let max_hbar_discrepancy = hbar
        .iter()
        .map(|h| (h.first - h.second).abs())
        .reduce(f64::max);

    let mut coefficient_rows = Vec::new();
    let mut expansion_failure = None;
    if same_dim && !(v1.modes().is_empty() && v2.modes().is_empty()) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.expansion_points {
            let Some(q) = random_q(v1, v2, &mut rng) else {
                expansion_failure = Some("no non-resonant Q found".to_string());
                break;
            };
            match (coefficients(v1, &q), coefficients(v2, &q)) {
                (Ok(first), Ok(second)) => coefficient_rows.push(CoefficientComparison { q, first, second }),
                (Err(e), _) | (_, Err(e)) => {
                    expansion_failure = Some(e.to_string());
                    break;
                }
            }
        }
    }

    let gap = (torus_max.0 - torus_max.1).abs();
    let tol = cfg.coeff_rel_tol;
    let any_differs = |idx: usize| {
        coefficient_rows
            .iter()
            .any(|c| differs(c.first[idx], c.second[idx], tol))
    };
    let all_agree = coefficient_rows.iter().all(|c| {
        (0..3).all(|i| !differs(c.first[i], c.second[i], tol))
    });

    let mut checks = Vec::new();
    if let Some(reason) = &expansion_failure {
        checks.push(Check {
            name: "expansion",
            passed: false,
            detail: reason.clone(),
        });
    }
    match &verdict {
        Verdict::TransformEquivalent { .. } | Verdict::EffectivelyEqual { .. } => {
            if let Some(d) = max_hbar_discrepancy {
                checks.push(Check {
                    name: "hbar-agreement",
                    passed: d <= cfg.hbar_tol,
                    detail: format!("max |H1 - H2| = {d:.3e} (tolerance {:.1e})", cfg.hbar_tol),
                });
            }
            checks.push(Check {
                name: "torus-maxima-equal",
                passed: gap <= MAXIMA_TOL,
                detail: format!("|max V1 - max V2| = {gap:.3e}"),
            });
            checks.push(Check {
                name: "coefficients-equal",
                passed: all_agree,
                detail: format!("a1, a2, a4 compared at {} points", coefficient_rows.len()),
            });
        }
        Verdict::NotEquivalent { witness, .. } => {
            let (name, passed, detail) = match witness {
                Witness::PhaseConditionFailed => (
                    "torus-maxima-gap",
                    gap >= cfg.max_gap,
                    format!("|max V1 - max V2| = {gap:.3e} (required ≥ {:.1e})", cfg.max_gap),
                ),
                Witness::MeanMismatch => ("a1-differs", any_differs(0), "means compared".to_string()),
                Witness::AmplitudeMismatch | Witness::DirectionMismatch => (
                    "a2-differs",
                    any_differs(1),
                    format!("a2 compared at {} points", coefficient_rows.len()),
                ),
                Witness::NoCommonScaling => (
                    "a4-differs",
                    any_differs(2),
                    format!("a4 compared at {} points", coefficient_rows.len()),
                ),
            };
            checks.push(Check { name, passed, detail });
        }
        Verdict::OutOfScope { .. } => {}
    }
    let consistent = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        verdict,
        torus_max,
        hbar,
        max_hbar_discrepancy,
        coefficients: coefficient_rows,
        checks,
        consistent,
    })
}
