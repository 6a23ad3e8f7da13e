//! Fixed potentials shared by the benchmarks.

use effham_core::TrigPotential;

/// `cos 2πx₁ + cos 2πx₂ + cos 2π(x₁ + x₂)`.
pub fn triangle() -> TrigPotential {
    TrigPotential::from_cosines(
        2,
        0.0,
        &[(vec![1, 0], 1.0, 0.0), (vec![0, 1], 1.0, 0.0), (vec![1, 1], 1.0, 0.0)],
    )
    .expect("fixed potential is valid")
}

/// Three generic modes with phases, in two dimensions.
pub fn generic_2d() -> TrigPotential {
    TrigPotential::from_cosines(
        2,
        0.1,
        &[(vec![2, 1], 0.6, 0.4), (vec![-1, 3], 0.4, -1.2), (vec![1, 1], 0.5, 2.0)],
    )
    .expect("fixed potential is valid")
}

/// Three independent modes in three dimensions.
pub fn generic_3d() -> TrigPotential {
    TrigPotential::from_cosines(
        3,
        0.0,
        &[(vec![1, 0, 1], 0.5, 0.3), (vec![0, 1, -1], 0.5, 0.0), (vec![1, 1, 0], 0.5, -0.7)],
    )
    .expect("fixed potential is valid")
}
