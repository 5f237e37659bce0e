//! 0-modules over semigroups with zero, the partial cochain complex, and
//! its cohomology.

mod brute;
mod complex;
mod maps;
mod module;
mod slice;

pub use brute::{brute_force_cohomology, element_order_multiset, BruteForceResult};
pub use complex::{
    coboundary, coboundary_matrix, coboundary_matrix_between, cochain_moduli, domain, Cochain, CochainDomain,
    CochainJson,
};
pub use maps::{inflation_map, restrict_to, restriction_map, unit_restriction_map};
pub use module::{ActionMatrix, FixedSubmodule, UnitContext, ZeroModule};
pub use slice::{
    cohomology, cohomology_shared, group_cohomology, normalize_two_cocycle, CohomologySlice, SliceJson,
    MAX_DIMENSION,
};
