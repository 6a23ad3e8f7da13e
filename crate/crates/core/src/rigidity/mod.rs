//! Rigidity of the effective Hamiltonian for potentials with few modes:
//! A-sets and sole vectors, the `M` function, phase matching and the
//! equivalence decision itself.

mod decide;
mod geometry;
mod mfunction;
mod phase;
mod vectorset;

pub use decide::{certify, decide, Verdict, Witness, DECISION_TOL};
pub use geometry::lemma_geometry_check;
pub use mfunction::{lattice_halfperiod, m_function, m_trace, MFunctionParams};
pub use phase::{phase_equivalent, solve_translation};
pub use vectorset::{build_a_set, prec, sole_vectors, VectorSet};
