//! Exact integer linear algebra: Smith forms, kernels, cokernels, integral solving.

mod lattice;
mod matrix;
mod smith;
pub mod vector;

pub use lattice::{
    cokernel, kernel_basis, saturation, solve_integral, LatticeClass, QuotientLattice,
};
pub use matrix::IntMatrix;
pub use smith::{elementary_divisors_sparse, smith_normal_form, SmithDecomposition};
