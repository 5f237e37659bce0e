//! Exact integer linear algebra: normal forms, lattices and finitely
//! generated abelian groups.

mod abelian;
mod matrix;
mod normal_form;

pub use abelian::{
    hom_analysis, subgroups_equal, AbelianHom, GroupSummary, HomAnalysis, PresentedAbelianGroup, Subquotient,
};
pub use matrix::{mod_floor, IntMatrix};
pub use normal_form::{hnf, kernel_basis, kernel_lattice, snf, solve, Echelon, SmithDecomposition};

/// `Z^rank / rowspan(relations)` with invariant factors computed.
pub fn group_from_presentation(rank: usize, relations: IntMatrix) -> crate::Result<PresentedAbelianGroup> {
    PresentedAbelianGroup::from_presentation(rank, relations)
}
