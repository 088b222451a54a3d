//! Exact scalars, the groups Z^n with symmetric forms, and sparse linear algebra.

mod group;
mod linalg;
mod scalar;
mod sparse;

pub use group::{form_eval, integer_coords, integer_span_basis, radical_member, GroupElement, SymmetricGroupForm};
pub use linalg::{inverse, kernel, kernel_of_rows, kernel_with_free_columns, rank, rref, solve_linear, span_contains, CoordinateSystem, EchelonBasis, Rref};
pub use scalar::{Field, Scalar};
pub use sparse::{SparseMatrix, SparseVector};
