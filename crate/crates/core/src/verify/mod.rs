//! Exactness of `0 -> H^2_0(S/U, A^U) -ψ-> H^2_0(S, A) -φ-> H^2(U, A)`
//! checked by lattice computation and by the constructive descent and lift.

mod descent;
mod transversal;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use descent::{descend_cocycle, lift_cocycle, lift_cochain, Descent};
pub use transversal::Transversal;

use crate::algebra::{enumerate_modifications_bounded, Modification, DEFAULT_MAX_ORDER};
use crate::cohomology::{cohomology, inflation_map, unit_restriction_map, CohomologySlice, UnitContext, ZeroModule};
use crate::error::Result;
use crate::fields::{galois_module, quotient_galois_module, ExtensionDescriptor};
use crate::linalg::{hom_analysis, subgroups_equal, AbelianHom, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

fn factors(slice: &CohomologySlice) -> Vec<String> {
    slice.invariant_factors().iter().map(ToString::to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisChecks {
    pub h1_trivial: bool,
    pub h2_of_units_trivial: bool,
    pub h1_of_units: Vec<String>,
    pub h2_of_units: Vec<String>,
}

/// `H^1(U, A)` and `H^2(U, A)`, computed on the unit group.
pub fn hypothesis_checks(module: &ZeroModule) -> Result<HypothesisChecks> {
    let split = module.semigroup().unit_group();
    let (um, _) = module.restrict_to_subgroup(&split.units)?;
    let h1 = cohomology(&um, 1)?;
    let h2 = cohomology(&um, 2)?;
    Ok(HypothesisChecks {
        h1_trivial: h1.is_trivial(),
        h2_of_units_trivial: h2.is_trivial(),
        h1_of_units: factors(&h1),
        h2_of_units: factors(&h2),
    })
}

/// Outcome of the constructive checks; only run when `H^1(U, A) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructiveChecks {
    /// `[lift(descend(f))] = [f]` for generators `f` of `ker φ`.
    pub descend_then_lift: bool,
    /// `[descend(lift(h̄))] = [h̄]` for the representatives of `H^2_0(S/U)`.
    pub lift_then_descend: bool,
    /// The map induced by `lift` equals `ψ` from the inflation.
    pub psi_paths_agree: bool,
    /// Descent through a rotated transversal yields the same classes.
    pub transversal_independent: bool,
}

impl ConstructiveChecks {
    pub fn all(&self) -> bool {
        self.descend_then_lift && self.lift_then_descend && self.psi_paths_agree && self.transversal_independent
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub modification_id: usize,
    pub zero_pairs: Vec<[usize; 2]>,
    pub units: Vec<usize>,
    pub hypothesis_h1: bool,
    pub h1_of_units: Vec<String>,
    pub h2_of_units: Vec<String>,
    pub psi_injective: bool,
    pub image_psi_equals_kernel_phi: bool,
    pub component_invariants: Vec<String>,
    pub quotient_component_invariants: Vec<String>,
    pub fixed_submodule_orders: Vec<u64>,
    pub constructive: Option<ConstructiveChecks>,
    pub verdict: Verdict,
}

/// Everything computed for one modification, kept for callers that need
/// the maps themselves.
#[derive(Clone, Debug)]
pub struct ExactSequence {
    pub context: UnitContext,
    pub slice: CohomologySlice,
    pub quotient_slice: CohomologySlice,
    pub units_slice: CohomologySlice,
    pub phi: AbelianHom,
    pub psi: AbelianHom,
}

pub fn exact_sequence(module: &ZeroModule) -> Result<ExactSequence> {
    let context = UnitContext::new(module)?;
    let slice = cohomology(module, 2)?;
    let (units_slice, phi) = unit_restriction_map(&slice, &context.split)?;
    let quotient_slice = cohomology(&context.quotient_module, 2)?;
    let psi = inflation_map(&quotient_slice, &slice, &context.quotient.projection, &context.fixed)?;
    Ok(ExactSequence {
        context,
        slice,
        quotient_slice,
        units_slice,
        phi,
        psi,
    })
}

fn same_class(slice: &CohomologySlice, a: &crate::cohomology::Cochain, b: &crate::cohomology::Cochain) -> Result<bool> {
    Ok(slice.class_coordinates(a)? == slice.class_coordinates(b)?)
}

fn constructive_checks(module: &ZeroModule, seq: &ExactSequence, kernel_gens: &IntMatrix) -> Result<ConstructiveChecks> {
    let ctx = &seq.context;
    let s = module.semigroup();
    let least = Transversal::least(s, &ctx.quotient);
    let rotated = Transversal::rotated(s, &ctx.quotient, 1);

    let mut descend_then_lift = true;
    let mut transversal_independent = true;
    for i in 0..kernel_gens.rows() {
        let f = seq.slice.cocycle_from_coordinates(kernel_gens.row(i))?;
        let d = descend_cocycle(ctx, module, &least, &f)?;
        let back = lift_cocycle(ctx, module, &least, &d.h_bar)?;
        descend_then_lift &= same_class(&seq.slice, &back, &f)?;
        let d_rot = descend_cocycle(ctx, module, &rotated, &f)?;
        transversal_independent &= same_class(&seq.quotient_slice, &d.h_bar, &d_rot.h_bar)?;
    }

    let mut lift_then_descend = true;
    let mut images = Vec::new();
    for rep in seq.quotient_slice.representatives() {
        let h = lift_cocycle(ctx, module, &least, rep)?;
        images.push(seq.slice.class_coordinates(&h)?);
        let d = descend_cocycle(ctx, module, &least, &h)?;
        lift_then_descend &= same_class(&seq.quotient_slice, &d.h_bar, rep)?;
    }
    let lift_matrix = IntMatrix::from_rows(seq.slice.group().rank(), images)?;
    let lift_hom = AbelianHom::new(
        seq.quotient_slice.group().clone(),
        seq.slice.group().clone(),
        lift_matrix,
    )?;
    Ok(ConstructiveChecks {
        descend_then_lift,
        lift_then_descend,
        psi_paths_agree: lift_hom.equals(&seq.psi),
        transversal_independent,
    })
}

/// Builds `φ` and `ψ`, measures `H^1(U, A)`, and checks `ker ψ = 0` and
/// `im ψ = ker φ`. The verdict is only pass/fail when `H^1(U, A) = 0`.
pub fn verify_exact_sequence(module: &ZeroModule, modification_id: usize) -> Result<ExactnessReport> {
    let seq = exact_sequence(module)?;
    let hyp = hypothesis_checks(module)?;
    let psi_analysis = hom_analysis(&seq.psi)?;
    let phi_analysis = hom_analysis(&seq.phi)?;
    let image_psi_equals_kernel_phi = subgroups_equal(
        &psi_analysis.image_generators,
        &phi_analysis.kernel_generators,
        seq.slice.group(),
    )?;
    let psi_injective = psi_analysis.injective;
    let (constructive, verdict) = if hyp.h1_trivial {
        let c = constructive_checks(module, &seq, &phi_analysis.kernel_generators)?;
        let v = if psi_injective && image_psi_equals_kernel_phi {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        (Some(c), v)
    } else {
        (None, Verdict::HypothesisNotMet)
    };
    Ok(ExactnessReport {
        modification_id,
        zero_pairs: module.semigroup().zero_pairs().iter().map(|&(a, b)| [a, b]).collect(),
        units: seq.context.split.units.clone(),
        hypothesis_h1: hyp.h1_trivial,
        h1_of_units: hyp.h1_of_units,
        h2_of_units: hyp.h2_of_units,
        psi_injective,
        image_psi_equals_kernel_phi,
        component_invariants: factors(&seq.slice),
        quotient_component_invariants: factors(&seq.quotient_slice),
        fixed_submodule_orders: seq.context.fixed.orders().to_vec(),
        constructive,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub modification_id: usize,
    pub zero_pairs: Vec<[usize; 2]>,
    /// `H^2_0(S, L^×)`.
    pub component_invariants: Vec<String>,
    /// `H^2_0(S/U, P^×)` with `P^×` from the subfield data.
    pub quotient_component_invariants: Vec<String>,
    pub h2_of_units_trivial: bool,
    pub factors_equal: bool,
    pub psi_isomorphism: bool,
    pub passed: bool,
}

/// `H^2_0(S, L^×) ≅ H^2_0(S/U, P^×)` for a finite-field extension.
pub fn verify_corollary(e: &ExtensionDescriptor, s: &Modification, modification_id: usize) -> Result<CorollaryReport> {
    let spec = galois_module(e)?;
    let module = spec.module_over(s)?;
    let seq = exact_sequence(&module)?;
    let p_module = quotient_galois_module(e, s, &seq.context.split)?;
    let p_slice = cohomology(&p_module, 2)?;
    let lhs = factors(&seq.slice);
    let rhs = factors(&p_slice);
    let generic_rhs = factors(&seq.quotient_slice);
    let psi = hom_analysis(&seq.psi)?;
    let surjective = psi.image.order() == seq.slice.group().order();
    let h2_units_trivial = seq.units_slice.is_trivial();
    let factors_equal = lhs == rhs && rhs == generic_rhs;
    let psi_isomorphism = psi.injective && surjective;
    Ok(CorollaryReport {
        modification_id,
        zero_pairs: s.zero_pairs().iter().map(|&(a, b)| [a, b]).collect(),
        component_invariants: lhs,
        quotient_component_invariants: rhs,
        h2_of_units_trivial: h2_units_trivial,
        factors_equal,
        psi_isomorphism,
        passed: factors_equal && psi_isomorphism && h2_units_trivial,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub tested: usize,
    pub passed: usize,
    pub hypothesis_not_met: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub extension: String,
    pub reports: Vec<ExactnessReport>,
    pub corollary: Vec<CorollaryReport>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Every exactness verdict is pass, every constructive check holds, and
    /// every corollary check passes.
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
            && self.summary.hypothesis_not_met == 0
            && self.corollary.iter().all(|c| c.passed)
            && self
                .reports
                .iter()
                .all(|r| r.constructive.as_ref().is_some_and(ConstructiveChecks::all))
    }
}

fn summarize(reports: &[ExactnessReport]) -> Summary {
    let mut s = Summary {
        tested: reports.len(),
        ..Default::default()
    };
    for r in reports {
        match r.verdict {
            Verdict::Pass if r.constructive.as_ref().is_none_or(ConstructiveChecks::all) => s.passed += 1,
            Verdict::HypothesisNotMet => s.hypothesis_not_met += 1,
            _ => s.failed += 1,
        }
    }
    s
}

/// Theorem and corollary over every modification of the Galois group.
pub fn verify_extension(e: &ExtensionDescriptor, max_order: usize) -> Result<VerificationReport> {
    let spec = galois_module(e)?;
    let mods = enumerate_modifications_bounded(&spec.group, max_order)?;
    let results = mods
        .par_iter()
        .enumerate()
        .map(|(id, s)| {
            let module = spec.module_over(s)?;
            Ok((verify_exact_sequence(&module, id)?, verify_corollary(e, s, id)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (reports, corollary): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok(VerificationReport {
        extension: e.to_string(),
        summary: summarize(&reports),
        reports,
        corollary,
    })
}

/// Exactness reports for an arbitrary module family over all modifications.
pub fn verify_family(
    group: &std::sync::Arc<crate::algebra::FiniteGroup>,
    family: impl Fn(&Modification) -> Result<ZeroModule> + Sync,
) -> Result<(Vec<ExactnessReport>, Summary)> {
    let mods = enumerate_modifications_bounded(group, DEFAULT_MAX_ORDER)?;
    let reports = mods
        .par_iter()
        .enumerate()
        .map(|(id, s)| verify_exact_sequence(&family(s)?, id))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&reports);
    Ok((reports, summary))
}
