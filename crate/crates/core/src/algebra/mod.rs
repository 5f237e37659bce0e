//! Finite groups, their modifications, and the structure the theory
//! attaches to a modification: units, the nilpotent ideal of non-units,
//! the order `≺`, meets, and the quotient by the units.

mod enumerate;
mod group;
mod modification;

pub use enumerate::{
    enumerate_modifications, enumerate_modifications_bounded, enumerate_modifications_naive, naive_candidate_count,
    sort_canonical, DEFAULT_MAX_ORDER,
};
pub use group::{FiniteGroup, GroupJson};
pub use modification::{CanonicalKind, Modification, ModificationJson, QuotientModification, UnitIdealSplit};
