//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
pub mod lattice;
mod matrix;
mod snf;

pub use group::{induced_hom, FgAbGroup, GroupHom};
pub use lattice::{contains, kernel_basis, kernel_with_left_inverse, rank, solve, solve_matrix};
pub use matrix::{Matrix, Overflow, Scalar};
pub use snf::{det, smith, snf, Snf, SnfResult};

use crate::IntMatrix;

/// `ℤᵐ / im A` for `A: ℤⁿ → ℤᵐ`.
pub fn cokernel(a: &IntMatrix) -> FgAbGroup {
    FgAbGroup::cokernel(a)
}
