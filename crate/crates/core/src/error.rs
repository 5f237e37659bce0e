use thiserror::Error;

/// Errors raised across the library.
///
/// Variants named `*Violation` or `*Failed` that are documented as "never
/// expected" indicate an internal invariant was broken; they carry a witness
/// so the failure can be reproduced.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // -- groups and modifications --
    #[error("group table is empty")]
    EmptyGroup,
    #[error("table is not square or has entries out of range: {0}")]
    MalformedTable(String),
    #[error("row or column {index} of the table is not a permutation ({axis})")]
    NotLatin { axis: &'static str, index: usize },
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("operation is not associative on ({}, {}, {})", .0.0, .0.1, .0.2)]
    NotAssociative((usize, usize, usize)),
    #[error("zero pair ({0}, {1}) erases a product with the identity or is out of range")]
    IdentityPairErased(usize, usize),
    #[error("weak cancellation fails for {0:?}")]
    CancellationFailed((usize, usize, usize)),
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("modifications live over different groups")]
    GroupMismatch,
    #[error("unit group is not normal: {0}U != U{0}")]
    NotNormal(usize),
    #[error("coset partition is not a congruence at ({0}, {1})")]
    NotCongruence(usize, usize),
    #[error("element {0} is not a unit")]
    NotAUnit(usize),
    #[error("element index {0} is out of range")]
    BadElement(usize),

    // -- linear algebra --
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("homomorphism does not respect relations (source relation {0})")]
    IllDefined(usize),
    #[error("vector is not in the lattice")]
    NotInLattice,

    // -- 0-modules and cohomology --
    #[error("action of element {0} is not an automorphism of the coefficients")]
    NotAutomorphism(usize),
    #[error("action incompatible at ({0}, {1}): M_s M_t != M_(st)")]
    ActionIncompatible(usize, usize),
    #[error("identity does not act trivially")]
    IdentityActsNontrivially,
    #[error("cohomology in dimension {0} is not supported")]
    DimensionUnsupported(usize),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("brute force needs {needed} cochains, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("modifications are not comparable under the order")]
    NotComparable,
    #[error("lifted cochain is not a cocycle")]
    LiftNotCocycle,

    // -- finite fields --
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("m = {m} does not divide n = {n}")]
    NotDivisible { m: u32, n: u32 },
    #[error("field of order {p}^{n} exceeds the bound {bound}")]
    TooLarge { p: u64, n: u32, bound: u64 },
    #[error("fixed submodule mismatch for subgroup of order {0}")]
    FixedPointMismatch(u64),
    #[error("{0} does not divide the Galois degree")]
    NotASubgroupOrder(u64),

    // -- theorem verification --
    #[error("cocycle class does not lie in the kernel of the unit restriction")]
    NotInKernelOfPhi,
    #[error("no solution for lambda at element {0}: H^1 of the units is not trivial")]
    HypothesisFailed(usize),
    #[error("descent assertion failed: {what} at {witness:?}")]
    DescentAssertionFailed { what: &'static str, witness: Vec<usize> },

    // -- monoid --
    #[error("element does not belong to this monoid")]
    ForeignElement,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
