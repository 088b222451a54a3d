//! Lie superalgebras by structure constants, invariant forms, weight
//! decompositions and the extended affine axioms.

mod algebra;
mod form;
mod matrices;
mod roots;

pub use algebra::{verify_superalgebra, LieSuperalgebra};
pub use form::verify_form;
pub use matrices::{entry_parity, from_matrices, matrix_parity, supercommutator, supertrace};
pub(crate) use algebra::sign;
pub use roots::{
    eals_axioms, format_weight, is_zero_weight, sl2_witness, structural_root_checks, verify_eals, weight_add,
    weight_decomposition, weight_neg, weight_scale, Root, RootDatum, Weight,
};
