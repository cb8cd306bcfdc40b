//! Strictly triangular permutations of `F_p^n` under composition.

mod classify;
mod perm;
mod zeta;

pub use classify::{
    conjugate_to_delta, conjugate_to_standard, mth_root, solve_coboundary,
    standard_form_representative, ConjugationCertificate, DiagonalMap,
};
pub use perm::TriangularPermutation;
pub use zeta::{add_to_digits, group_order, zeta, zeta_inv};
