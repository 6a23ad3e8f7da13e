//! Numerical and exact evaluation of the effective Hamiltonian `H̄(p)`.
//!
//! `H̄(p)` is the unique constant for which `½|p + Dv|² + V(x) = H̄(p)` has a
//! periodic viscosity solution. [`hbar_numeric`] approximates it as the
//! long-time decay rate of `w_t + ½|p + Dw|² + V = 0`. In one dimension
//! [`hbar_1d_exact`] gives the value by quadrature, and [`hbar_separable`]
//! adds up independent coordinate blocks.

mod exact1d;
pub mod quadrature;
mod separable;
mod solver;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::TrigPotential;

pub use exact1d::{critical_momentum, hbar_1d_exact};
pub use separable::{hbar_separable, split_separable, SeparableBlock};

/// Numerical Hamiltonian used by the grid solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// Upwind flux `Σ_i ½ max(max(p_i + q⁻_i, 0)², min(p_i + q⁺_i, 0)²)`.
    Godunov,
    /// Central flux with dissipation sized by the a-priori gradient bound.
    LaxFriedrichs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub grid_points_per_dim: usize,
    pub cfl: f64,
    /// Final time `T2`; `T1 = T2 / 2`. Defaults to `50 / (1 + |p|)`.
    pub horizon: Option<f64>,
    pub scheme: Scheme,
    /// Repeat the solve on a grid of half the resolution and fold the change
    /// into the error estimate.
    pub resolution_check: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_points_per_dim: 64,
            cfl: 0.4,
            horizon: None,
            scheme: Scheme::Godunov,
            resolution_check: true,
        }
    }
}

impl SolverConfig {
    pub fn with_grid(n: usize) -> Self {
        Self {
            grid_points_per_dim: n,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_dim < 4 {
            return Err(Error::SolverConfig("at least 4 grid points per dimension are required".into()));
        }
        if self.resolution_check && self.grid_points_per_dim % 2 != 0 {
            return Err(Error::SolverConfig("the resolution check needs an even grid size".into()));
        }
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::SolverConfig(format!("CFL number {} outside (0, 1)", self.cfl)));
        }
        if let Some(t) = self.horizon {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::SolverConfig(format!("horizon {t} must be positive")));
            }
        }
        Ok(())
    }

    pub fn horizon_for(&self, p: &[f64]) -> f64 {
        self.horizon
            .unwrap_or_else(|| 50.0 / (1.0 + p.iter().map(|x| x * x).sum::<f64>().sqrt()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HbarSample {
    pub p: Vec<f64>,
    pub value: f64,
    /// Largest of the two-horizon versus single-horizon gap and, when the
    /// resolution check runs, the change from the half-resolution grid.
    pub error_estimate: f64,
}

/// `H̄(p)` from the long-time behaviour of the time-dependent problem.
///
/// When every mode vector is a multiple of some `g > 1`, the problem is solved
/// for `W` with `V(x) = W(gx)`: `u(gx)/g` turns a corrector of `W` into one of
/// `V`, so both share `H̄`, and the grid then spans one period of `V` instead
/// of `g^n` copies of it.
pub fn hbar_numeric(v: &TrigPotential, p: &[f64], cfg: &SolverConfig) -> Result<HbarSample> {
    cfg.validate()?;
    let dim = v.dim();
    if !(1..=3).contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    if p.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: p.len(),
        });
    }
    let t2 = cfg.horizon_for(p);
    let n = cfg.grid_points_per_dim;
    let v = &v.primitive_cell();
    let fine = solver::run(v, p, n, cfg.cfl, t2, cfg.scheme);
    let mut err = (fine.two_horizon - fine.single_horizon).abs();
    if cfg.resolution_check {
        let coarse = solver::run(v, p, n / 2, cfg.cfl, t2, cfg.scheme);
        err = err.max((fine.two_horizon - coarse.two_horizon).abs());
    }
    Ok(HbarSample {
        p: p.to_vec(),
        value: fine.two_horizon,
        error_estimate: err,
    })
}

/// [`hbar_numeric`] at every momentum, evaluated in parallel, in input order.
pub fn hbar_grid(v: &TrigPotential, ps: &[Vec<f64>], cfg: &SolverConfig) -> Result<Vec<HbarSample>> {
    ps.par_iter().map(|p| hbar_numeric(v, p, cfg)).collect()
}

/// Cartesian product of `min:max:step` ranges, last coordinate fastest.
pub fn momentum_grid(ranges: &[(f64, f64, f64)]) -> Vec<Vec<f64>> {
    let axes: Vec<Vec<f64>> = ranges
        .iter()
        .map(|&(lo, hi, step)| {
            let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
            (0..count).map(|i| lo + i as f64 * step).collect()
        })
        .collect();
    let mut out = vec![Vec::new()];
    for axis in &axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}
