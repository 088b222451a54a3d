//! Exact-arithmetic toolkit for Lie superalgebras: structure-constant
//! algebras and their invariant forms, osp(1,2) modules and their
//! decomposition, extended affine root supersystems, and two affinization
//! constructions (a cocycle-twisted loop algebra and an order-4 twisted
//! matrix superalgebra).

pub mod affinize;
pub mod document;
pub mod error;
pub mod foundations;
pub mod liesuper;
pub mod matrixsuper;
pub mod osp12;
pub mod report;
pub mod rootsys;

pub use error::{Error, Result};
pub use report::{Check, Report, Status};
pub use foundations::{Field, GroupElement, Scalar, SparseMatrix, SparseVector, SymmetricGroupForm};
