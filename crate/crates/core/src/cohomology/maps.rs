//! Maps induced on cohomology: restriction along `S ≺ T`, restriction to
//! the unit group, and inflation from `S/U`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::module::{FixedSubmodule, ZeroModule};
use super::slice::{cohomology_shared, CohomologySlice};
use crate::algebra::{Modification, UnitIdealSplit};
use crate::error::{Error, Result};
use crate::linalg::{AbelianHom, IntMatrix};

fn hom_from_images(source: &CohomologySlice, target: &CohomologySlice, images: Vec<Vec<BigInt>>) -> Result<AbelianHom> {
    let matrix = IntMatrix::from_rows(target.group().rank(), images)?;
    AbelianHom::new(source.group().clone(), target.group().clone(), matrix)
}

fn same_coefficients(a: &ZeroModule, b: &ZeroModule) -> bool {
    a.orders() == b.orders() && (0..a.semigroup().order()).all(|s| a.action(s) == b.action(s))
}

/// `ε_{T,S}` between two slices of the same dimension over `S ≺ T` with
/// the same coefficients.
pub fn restriction_map(slice_t: &CohomologySlice, slice_s: &CohomologySlice) -> Result<AbelianHom> {
    if slice_t.dimension() != slice_s.dimension() {
        return Err(Error::DimensionMismatch("slices of different dimensions".into()));
    }
    if !slice_s.semigroup().is_preceq(slice_t.semigroup())? {
        return Err(Error::NotComparable);
    }
    if !same_coefficients(slice_t.module(), slice_s.module()) {
        return Err(Error::DimensionMismatch("modules carry different coefficients".into()));
    }
    let images = slice_t
        .representatives()
        .iter()
        .map(|rep| {
            let restricted = rep.pull_back(slice_s.domain_n().clone(), |t| t.to_vec())?;
            slice_s.class_coordinates(&restricted)
        })
        .collect::<Result<Vec<_>>>()?;
    hom_from_images(slice_t, slice_s, images)
}

/// Builds the slice over `s` and returns it with `ε_{T,S}`.
pub fn restrict_to(slice_t: &CohomologySlice, s: &Modification) -> Result<(CohomologySlice, AbelianHom)> {
    if !s.is_preceq(slice_t.semigroup())? {
        return Err(Error::NotComparable);
    }
    let module = slice_t.module().restrict_to(s)?;
    let slice_s = cohomology_shared(Arc::new(module), slice_t.dimension())?;
    let eps = restriction_map(slice_t, &slice_s)?;
    Ok((slice_s, eps))
}

/// `φ`: restriction of `H^n_0(S, A)` to the unit group `U`, computed as
/// classical cohomology of `U`. Returns the target slice and the map.
pub fn unit_restriction_map(slice_s: &CohomologySlice, split: &UnitIdealSplit) -> Result<(CohomologySlice, AbelianHom)> {
    let (units_module, emb) = slice_s.module().restrict_to_subgroup(&split.units)?;
    let slice_u = cohomology_shared(Arc::new(units_module), slice_s.dimension())?;
    let images = slice_s
        .representatives()
        .iter()
        .map(|rep| {
            let restricted = rep.pull_back(slice_u.domain_n().clone(), |t| t.iter().map(|&x| emb[x]).collect())?;
            slice_u.class_coordinates(&restricted)
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = hom_from_images(slice_s, &slice_u, images)?;
    Ok((slice_u, phi))
}

/// `ψ`: inflation `H^n_0(S/U, A^U) -> H^n_0(S, A)` by pulling each
/// representative back along `projection` and embedding its values.
pub fn inflation_map(
    slice_quot: &CohomologySlice,
    slice_s: &CohomologySlice,
    projection: &[usize],
    fixed: &FixedSubmodule,
) -> Result<AbelianHom> {
    let images = slice_quot
        .representatives()
        .iter()
        .map(|rep| {
            let mut lifted = slice_s.zero_cochain();
            for (i, t) in slice_s.domain_n().tuples().iter().enumerate() {
                let image: Vec<usize> = t.iter().map(|&x| projection[x]).collect();
                let v = rep
                    .at(&image)
                    .ok_or_else(|| Error::DimensionMismatch(format!("{image:?} is zero in the quotient")))?;
                lifted.set(i, &fixed.embed(v));
            }
            if !slice_s.is_cocycle(&lifted) {
                return Err(Error::LiftNotCocycle);
            }
            slice_s.class_coordinates(&lifted)
        })
        .collect::<Result<Vec<_>>>()?;
    hom_from_images(slice_quot, slice_s, images)
}
