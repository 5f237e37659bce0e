//! The semilattice of groups `H^2_0(S, A)` over all modifications `S` of a
//! finite group, glued by the restriction maps.

mod clifford;

use std::borrow::Cow;
use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use clifford::{verify_clifford, CliffordReport, SamplingMode, DEFAULT_EXHAUSTIVE_BOUND, DEFAULT_SAMPLES};

use crate::algebra::{enumerate_modifications_bounded, FiniteGroup, GroupJson, Modification, DEFAULT_MAX_ORDER};
use crate::cohomology::{cohomology_shared, restriction_map, CohomologySlice, ZeroModule};
use crate::error::{Error, Result};
use crate::fields::{galois_module, ExtensionDescriptor};
use crate::linalg::{AbelianHom, GroupSummary};

/// Whether the restriction maps are computed up front or on request.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EpsMode {
    #[default]
    Eager,
    Lazy,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub max_order: usize,
    pub eps: EpsMode,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_order: DEFAULT_MAX_ORDER,
            eps: EpsMode::Eager,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentRecord {
    pub modification_id: usize,
    pub slice: CohomologySlice,
}

/// An element: a component and coordinates in its invariant-factor basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonoidElement {
    pub modification_id: usize,
    #[serde(serialize_with = "coords_as_strings")]
    pub coords: Vec<BigInt>,
}

fn coords_as_strings<S: serde::Serializer>(coords: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(coords.iter().map(ToString::to_string))
}

#[derive(Clone, Debug)]
pub struct BrauerMonoid {
    group: Arc<FiniteGroup>,
    description: String,
    modifications: Vec<Modification>,
    components: Vec<ComponentRecord>,
    ids: HashMap<Vec<(usize, usize)>, usize>,
    /// Keyed by `(T, S)` with `S ≺ T`.
    eps: HashMap<(usize, usize), AbelianHom>,
    mode: EpsMode,
}

/// Builds the monoid; `family` gives the module over each modification.
pub fn build_monoid(
    group: Arc<FiniteGroup>,
    description: impl Into<String>,
    family: impl Fn(&Modification) -> Result<ZeroModule> + Sync,
    options: &BuildOptions,
) -> Result<BrauerMonoid> {
    let modifications = enumerate_modifications_bounded(&group, options.max_order)?;
    let components = modifications
        .par_iter()
        .enumerate()
        .map(|(id, s)| {
            let module = family(s)?;
            if module.semigroup() != s {
                return Err(Error::GroupMismatch);
            }
            Ok(ComponentRecord {
                modification_id: id,
                slice: cohomology_shared(Arc::new(module), 2)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ids = modifications
        .iter()
        .enumerate()
        .map(|(i, m)| (m.zero_pairs().to_vec(), i))
        .collect();
    let mut monoid = BrauerMonoid {
        group,
        description: description.into(),
        modifications,
        components,
        ids,
        eps: HashMap::new(),
        mode: options.eps,
    };
    if options.eps == EpsMode::Eager {
        let pairs = monoid.comparable_pairs()?;
        let maps = pairs
            .par_iter()
            .map(|&(t, s)| Ok(((t, s), monoid.compute_eps(t, s)?)))
            .collect::<Result<Vec<_>>>()?;
        monoid.eps = maps.into_iter().collect();
    }
    Ok(monoid)
}

/// The monoid of a finite-field extension: `L^×` with the Frobenius action
/// over every modification of the Galois group.
pub fn build_galois_monoid(e: &ExtensionDescriptor, options: &BuildOptions) -> Result<BrauerMonoid> {
    let spec = galois_module(e)?;
    build_monoid(
        spec.group.clone(),
        format!("{e}"),
        |s| spec.module_over(s),
        options,
    )
}

impl BrauerMonoid {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn modifications(&self) -> &[Modification] {
        &self.modifications
    }

    pub fn components(&self) -> &[ComponentRecord] {
        &self.components
    }

    pub fn component(&self, id: usize) -> Result<&ComponentRecord> {
        self.components.get(id).ok_or(Error::ForeignElement)
    }

    pub fn eps_mode(&self) -> EpsMode {
        self.mode
    }

    /// Id of the modification with the given zero set.
    pub fn id_of(&self, m: &Modification) -> Option<usize> {
        (m.group().as_ref() == self.group.as_ref())
            .then(|| self.ids.get(m.zero_pairs()).copied())
            .flatten()
    }

    /// The full modification, top of the order.
    pub fn top(&self) -> usize {
        self.ids[&Vec::new()]
    }

    pub fn precedes(&self, s: usize, t: usize) -> Result<bool> {
        self.modifications[s].is_preceq(&self.modifications[t])
    }

    pub fn meet(&self, s: usize, t: usize) -> Result<usize> {
        let m = self.modifications[s].meet(&self.modifications[t])?;
        self.id_of(&m).ok_or(Error::ForeignElement)
    }

    /// All `(T, S)` with `S ≺ T`.
    pub fn comparable_pairs(&self) -> Result<Vec<(usize, usize)>> {
        let k = self.modifications.len();
        let mut out = Vec::new();
        for t in 0..k {
            for s in 0..k {
                if self.precedes(s, t)? {
                    out.push((t, s));
                }
            }
        }
        Ok(out)
    }

    fn compute_eps(&self, t: usize, s: usize) -> Result<AbelianHom> {
        restriction_map(&self.components[t].slice, &self.components[s].slice)
    }

    /// `ε_{T,S}`.
    pub fn eps(&self, t: usize, s: usize) -> Result<Cow<'_, AbelianHom>> {
        if t >= self.components.len() || s >= self.components.len() {
            return Err(Error::ForeignElement);
        }
        if let Some(h) = self.eps.get(&(t, s)) {
            return Ok(Cow::Borrowed(h));
        }
        if !self.precedes(s, t)? {
            return Err(Error::NotComparable);
        }
        Ok(Cow::Owned(self.compute_eps(t, s)?))
    }

    fn check(&self, x: &MonoidElement) -> Result<()> {
        let c = self.components.get(x.modification_id).ok_or(Error::ForeignElement)?;
        let g = c.slice.group();
        if x.coords.len() != g.rank() || g.reduce_invariant(&x.coords) != x.coords {
            return Err(Error::ForeignElement);
        }
        Ok(())
    }

    pub fn element(&self, modification_id: usize, coords: &[BigInt]) -> Result<MonoidElement> {
        let c = self.components.get(modification_id).ok_or(Error::ForeignElement)?;
        let g = c.slice.group();
        if coords.len() != g.rank() {
            return Err(Error::ForeignElement);
        }
        Ok(MonoidElement {
            modification_id,
            coords: g.reduce_invariant(coords),
        })
    }

    /// `(S, x)(T, y) = (S ∧ T, ε_{S,S∧T}(x) + ε_{T,S∧T}(y))`.
    pub fn multiply(&self, x: &MonoidElement, y: &MonoidElement) -> Result<MonoidElement> {
        self.check(x)?;
        self.check(y)?;
        let m = self.meet(x.modification_id, y.modification_id)?;
        let ex = self.eps(x.modification_id, m)?.apply(&x.coords);
        let ey = self.eps(y.modification_id, m)?.apply(&y.coords);
        let sum: Vec<BigInt> = ex.iter().zip(&ey).map(|(a, b)| a + b).collect();
        self.element(m, &sum)
    }

    /// The identity of each component.
    pub fn idempotents(&self) -> Vec<MonoidElement> {
        self.components
            .iter()
            .map(|c| MonoidElement {
                modification_id: c.modification_id,
                coords: vec![BigInt::from(0); c.slice.group().rank()],
            })
            .collect()
    }

    /// `(G^0, 0)`.
    pub fn identity(&self) -> MonoidElement {
        self.idempotents().swap_remove(self.top())
    }

    /// Every element, component by component; `None` above `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<MonoidElement>> {
        let mut out = Vec::new();
        for c in &self.components {
            let els = c.slice.group().elements(limit.saturating_sub(out.len() as u64))?;
            out.extend(els.into_iter().map(|coords| MonoidElement {
                modification_id: c.modification_id,
                coords,
            }));
        }
        Some(out)
    }

    /// Total number of elements.
    pub fn element_count(&self) -> BigInt {
        self.components.iter().map(|c| c.slice.order()).sum()
    }

    pub fn nontriviality(&self) -> Nontriviality {
        let nontrivial_components: Vec<usize> = self
            .components
            .iter()
            .filter(|c| !c.slice.is_trivial())
            .map(|c| c.modification_id)
            .collect();
        Nontriviality {
            any_component_nontrivial: !nontrivial_components.is_empty(),
            nontrivial_components,
            semilattice_nontrivial: self.modifications.len() > 1,
        }
    }

    pub fn to_json(&self) -> Result<MonoidJson> {
        let mut pairs = self.comparable_pairs()?;
        pairs.sort();
        let eps = pairs
            .into_iter()
            .map(|(t, s)| {
                let h = self.eps(t, s)?;
                let m = h.matrix();
                Ok(EpsJson {
                    from: t,
                    to: s,
                    matrix: (0..m.rows())
                        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonoidJson {
            metadata: Metadata {
                tool: env!("CARGO_PKG_NAME").to_string(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                module: self.description.clone(),
                eps_mode: self.mode,
            },
            group: GroupJson::from(self.group.as_ref()),
            modifications: self
                .modifications
                .iter()
                .map(|m| m.zero_pairs().iter().map(|&(a, b)| [a, b]).collect())
                .collect(),
            components: self
                .components
                .iter()
                .map(|c| ComponentJson {
                    modification: c.modification_id,
                    group: c.slice.group().summary(),
                    order: c.slice.order().to_string(),
                })
                .collect(),
            eps,
            nontriviality: self.nontriviality(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nontriviality {
    pub any_component_nontrivial: bool,
    pub nontrivial_components: Vec<usize>,
    pub semilattice_nontrivial: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub module: String,
    pub eps_mode: EpsMode,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentJson {
    pub modification: usize,
    pub group: GroupSummary,
    pub order: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EpsJson {
    pub from: usize,
    pub to: usize,
    pub matrix: Vec<Vec<String>>,
}

/// Monoid export; field order is fixed so output diffs cleanly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidJson {
    pub metadata: Metadata,
    pub group: GroupJson,
    pub modifications: Vec<Vec<[usize; 2]>>,
    pub components: Vec<ComponentJson>,
    pub eps: Vec<EpsJson>,
    pub nontriviality: Nontriviality,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::extension;

    fn galois(p: u64, m: u32, n: u32) -> BrauerMonoid {
        build_galois_monoid(&extension(p, m, n).unwrap(), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn build_examples() {
        let c1 = Arc::new(FiniteGroup::cyclic(1).unwrap());
        let m = build_monoid(
            c1,
            "Z/5",
            |s| ZeroModule::trivial_action(s.clone(), vec![5]),
            &BuildOptions::default(),
        )
        .unwrap();
        assert_eq!(m.components().len(), 1);
        assert!(m.components()[0].slice.is_trivial());

        let m = galois(2, 1, 2);
        assert_eq!(m.components().len(), 2);
        assert!(m.components().iter().all(|c| c.slice.is_trivial()));
        assert_eq!(m.comparable_pairs().unwrap().len(), 3);

        assert_eq!(galois(2, 1, 3).components().len(), 4);
    }

    #[test]
    fn idempotents_and_meets() {
        let m = galois(2, 1, 3);
        let ids = m.idempotents();
        assert_eq!(ids.len(), 4);
        for a in &ids {
            for b in &ids {
                let p = m.multiply(a, b).unwrap();
                assert_eq!(p.modification_id, m.meet(a.modification_id, b.modification_id).unwrap());
                assert!(p.coords.iter().all(|c| c == &BigInt::from(0)));
            }
        }
        // The two three-pair modifications of C3 meet in the annihilator.
        assert_eq!(m.meet(1, 2).unwrap(), 3);
    }

    #[test]
    fn identity_and_group_law() {
        let c4 = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let m = build_monoid(
            c4,
            "Z/4 trivial",
            |s| ZeroModule::trivial_action(s.clone(), vec![4]),
            &BuildOptions::default(),
        )
        .unwrap();
        let e = m.identity();
        let all = m.elements(10_000).unwrap();
        for x in &all {
            assert_eq!(&m.multiply(&e, x).unwrap(), x);
            assert_eq!(&m.multiply(x, &e).unwrap(), x);
        }
        let top = m.top();
        let g = m.component(top).unwrap().slice.group().clone();
        let xs: Vec<_> = all.iter().filter(|x| x.modification_id == top).collect();
        for x in &xs {
            for y in &xs {
                let sum: Vec<BigInt> = x.coords.iter().zip(&y.coords).map(|(a, b)| a + b).collect();
                assert_eq!(m.multiply(x, y).unwrap().coords, g.reduce_invariant(&sum));
            }
        }
    }

    #[test]
    fn lazy_matches_eager() {
        let e = extension(2, 1, 4).unwrap();
        let eager = build_galois_monoid(&e, &BuildOptions::default()).unwrap();
        let lazy = build_galois_monoid(
            &e,
            &BuildOptions {
                eps: EpsMode::Lazy,
                ..Default::default()
            },
        )
        .unwrap();
        for (t, s) in eager.comparable_pairs().unwrap() {
            assert!(eager.eps(t, s).unwrap().equals(&lazy.eps(t, s).unwrap()));
        }
    }

    #[test]
    fn foreign_elements_rejected() {
        let m = galois(2, 1, 2);
        let x = MonoidElement {
            modification_id: 7,
            coords: vec![],
        };
        assert_eq!(m.multiply(&x, &m.identity()).unwrap_err(), Error::ForeignElement);
    }

    #[test]
    fn json_is_stable() {
        let a = serde_json::to_string(&galois(2, 1, 2).to_json().unwrap()).unwrap();
        let b = serde_json::to_string(&galois(2, 1, 2).to_json().unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(r#"{"metadata":"#));
    }
}
