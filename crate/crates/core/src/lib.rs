//! Effective Hamiltonians `H̄(p)` of mechanical Hamiltonians `½|p|² + V(x)`
//! with trigonometric-polynomial potentials on the torus.
//!
//! * [`potential`]: the potential data model, evaluation and transforms.
//! * [`expansion`]: the large-momentum corrector expansion of `H̄`.
//! * [`homogenize`]: numerical solution of the cell problem and exact
//!   one-dimensional and separable oracles.
//! * [`rigidity`]: deciding whether two potentials share `H̄`.
//! * [`verify`]: cross-validation of a verdict against numerical evidence.

pub mod error;
pub mod expansion;
pub mod homogenize;
pub mod io;
pub mod lattice;
pub mod optimize;
pub mod potential;
pub mod rigidity;
pub mod verify;

pub use error::{Error, Result};
pub use expansion::{ExpansionResult, FourierSeries};
pub use homogenize::{HbarSample, Scheme, SolverConfig};
pub use potential::{FourierMode, ModeVector, Orientation, RealModeForm, Transform, TrigPotential};
pub use rigidity::{MFunctionParams, Verdict, VectorSet, Witness};
pub use verify::{VerifyConfig, VerifyReport};
