use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::{FiniteGroup, GroupJson};
use crate::error::{Error, Result};

/// Which canonical modification to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    /// No products erased: the group with an adjoined zero.
    Full,
    /// Every product of two non-identity elements erased.
    Annihilator,
}

/// A semigroup on `G ∪ {0}` where some products `xy` of non-identity
/// elements are replaced by zero. Products return `None` for zero.
#[derive(Clone, Debug)]
pub struct Modification {
    group: Arc<FiniteGroup>,
    zero_pairs: Vec<(usize, usize)>,
    erased: Vec<bool>,
}

impl PartialEq for Modification {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.zero_pairs == other.zero_pairs
    }
}

impl Eq for Modification {}

impl Modification {
    /// Validated modification; associativity is checked over all triples.
    pub fn from_zero_set(group: Arc<FiniteGroup>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let m = Self::unchecked(group, pairs)?;
        m.check_associative()?;
        Ok(m)
    }

    /// Builds the erasure table without the associativity check. Pairs are
    /// still validated against the identity and the index range.
    pub(crate) fn unchecked(group: Arc<FiniteGroup>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = group.order();
        let set: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        let mut erased = vec![false; n * n];
        for &(i, j) in &set {
            if i == 0 || j == 0 || i >= n || j >= n {
                return Err(Error::IdentityPairErased(i, j));
            }
            erased[i * n + j] = true;
        }
        Ok(Modification {
            group,
            zero_pairs: set.into_iter().collect(),
            erased,
        })
    }

    pub fn canonical(group: Arc<FiniteGroup>, kind: CanonicalKind) -> Self {
        let n = group.order();
        let pairs: Vec<(usize, usize)> = match kind {
            CanonicalKind::Full => Vec::new(),
            CanonicalKind::Annihilator => (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect(),
        };
        Self::unchecked(group, pairs).expect("canonical pairs avoid the identity")
    }

    pub fn full(group: Arc<FiniteGroup>) -> Self {
        Self::canonical(group, CanonicalKind::Full)
    }

    pub fn annihilator(group: Arc<FiniteGroup>) -> Self {
        Self::canonical(group, CanonicalKind::Annihilator)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Number of nonzero elements.
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Erased pairs, sorted lexicographically.
    pub fn zero_pairs(&self) -> &[(usize, usize)] {
        &self.zero_pairs
    }

    pub fn is_erased(&self, x: usize, y: usize) -> bool {
        self.erased[x * self.group.order() + y]
    }

    /// `x ⋆ y` on nonzero elements.
    pub fn star(&self, x: usize, y: usize) -> Option<usize> {
        if self.is_erased(x, y) {
            None
        } else {
            Some(self.group.mul(x, y))
        }
    }

    /// `⋆` extended to the zero element.
    pub fn star0(&self, x: Option<usize>, y: Option<usize>) -> Option<usize> {
        self.star(x?, y?)
    }

    /// Product of a sequence of nonzero elements (empty product is the identity).
    pub fn product(&self, xs: &[usize]) -> Option<usize> {
        xs.iter().try_fold(0usize, |acc, &x| self.star(acc, x))
    }

    pub fn is_full(&self) -> bool {
        self.zero_pairs.is_empty()
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let xy = self.star(x, y);
                for z in 0..n {
                    let left = self.star0(xy, Some(z));
                    let right = self.star0(Some(x), self.star(y, z));
                    if left != right {
                        return Err(Error::NotAssociative((x, y, z)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `x ⋆ z = y ⋆ z ≠ 0 ⇒ x = y`, and the left-sided version.
    pub fn check_weak_cancellation(&self) -> Result<()> {
        let n = self.order();
        for z in 0..n {
            for x in 0..n {
                for y in x + 1..n {
                    if let (Some(a), Some(b)) = (self.star(x, z), self.star(y, z)) {
                        if a == b {
                            return Err(Error::CancellationFailed((x, y, z)));
                        }
                    }
                    if let (Some(a), Some(b)) = (self.star(z, x), self.star(z, y)) {
                        if a == b {
                            return Err(Error::CancellationFailed((x, y, z)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `S ≺ T`: every product vanishing in `T` vanishes in `S`.
    pub fn is_preceq(&self, other: &Modification) -> Result<bool> {
        if *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(other.zero_pairs.iter().all(|&(x, y)| self.is_erased(x, y)))
    }

    /// Greatest lower bound under `≺`: the union of the zero sets.
    pub fn meet(&self, other: &Modification) -> Result<Modification> {
        if *self.group != *other.group {
            return Err(Error::GroupMismatch);
        }
        let pairs = self.zero_pairs.iter().chain(&other.zero_pairs).copied();
        // The union of two associative zero sets is associative; a failure
        // here means a bug, and from_zero_set reports it as such.
        Modification::from_zero_set(self.group.clone(), pairs)
    }

    /// Invertible elements, the complementary ideal and its nilpotency index.
    pub fn unit_group(&self) -> UnitIdealSplit {
        let n = self.order();
        let units: Vec<usize> = (0..n)
            .filter(|&x| (0..n).any(|y| self.star(x, y) == Some(0) && self.star(y, x) == Some(0)))
            .collect();
        let ideal: Vec<usize> = (0..n).filter(|x| !units.contains(x)).collect();
        // I^k as the set of nonzero k-fold products; zero is always present.
        let mut power: BTreeSet<usize> = ideal.iter().copied().collect();
        let mut index = 1;
        while !power.is_empty() {
            let mut next = BTreeSet::new();
            for &p in &power {
                for &i in &ideal {
                    if let Some(v) = self.star(p, i) {
                        next.insert(v);
                    }
                }
            }
            power = next;
            index += 1;
            assert!(index <= n + 1, "ideal of non-units is not nilpotent");
        }
        let mut is_unit = vec![false; n];
        for &u in &units {
            is_unit[u] = true;
        }
        UnitIdealSplit {
            units,
            ideal,
            nilpotency_index: index,
            is_unit,
        }
    }

    /// Whether `xU = Ux` for every nonzero `x`.
    pub fn units_normal(&self, split: &UnitIdealSplit) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            let left: BTreeSet<Option<usize>> = split.units.iter().map(|&u| self.star(x, u)).collect();
            let right: BTreeSet<Option<usize>> = split.units.iter().map(|&u| self.star(u, x)).collect();
            if left != right {
                return Err(Error::NotNormal(x));
            }
        }
        Ok(())
    }

    /// `a_x` with `a ⋆ x = x ⋆ a_x ≠ 0`, computed as `x^-1 a x` in the group.
    pub fn conjugation_witness(&self, split: &UnitIdealSplit, a: usize, x: usize) -> Result<usize> {
        if a >= self.order() {
            return Err(Error::BadElement(a));
        }
        if x >= self.order() {
            return Err(Error::BadElement(x));
        }
        if !split.is_unit(a) {
            return Err(Error::NotAUnit(a));
        }
        self.units_normal(split)?;
        let ax = self.group.conjugate(a, x);
        let lhs = self.star(a, x);
        if !split.is_unit(ax) || lhs.is_none() || lhs != self.star(x, ax) {
            return Err(Error::NotNormal(x));
        }
        // Uniqueness: no other unit b has x ⋆ b = a ⋆ x.
        debug_assert_eq!(split.units.iter().filter(|&&b| self.star(x, b) == lhs).count(), 1);
        Ok(ax)
    }

    /// `S/U` over `G/U` together with the projection onto cosets.
    pub fn quotient_by_units(&self, split: &UnitIdealSplit) -> Result<QuotientModification> {
        self.units_normal(split)?;
        let g = &self.group;
        let n = g.order();
        // Right cosets Ux, numbered by least element.
        let mut projection = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &u in &split.units {
                projection[g.mul(u, x)] = c;
            }
        }
        let k = reps.len();
        let mut table = vec![vec![0; k]; k];
        let mut zero_pairs = Vec::new();
        for (ci, &s) in reps.iter().enumerate() {
            for (cj, &t) in reps.iter().enumerate() {
                table[ci][cj] = projection[g.mul(s, t)];
                // Congruence: either every product of the two cosets vanishes,
                // or none does and all land in one coset.
                let mut outcome: Option<Option<usize>> = None;
                for &a in &split.units {
                    for &b in &split.units {
                        let p = self.star(g.mul(a, s), g.mul(b, t)).map(|v| projection[v]);
                        match outcome {
                            None => outcome = Some(p),
                            Some(prev) if prev != p => return Err(Error::NotCongruence(s, t)),
                            _ => {}
                        }
                    }
                }
                if outcome == Some(None) {
                    zero_pairs.push((ci, cj));
                }
            }
        }
        let names = reps.iter().map(|&r| format!("U{}", g.name(r))).collect();
        let qgroup = Arc::new(FiniteGroup::from_table(table, Some(names))?);
        let quotient = Modification::from_zero_set(qgroup, zero_pairs)?;
        Ok(QuotientModification {
            quotient,
            projection,
            coset_reps: reps,
        })
    }
}

/// Units `U` of a modification, the ideal `I = S \ U` (zero implicit) and
/// the least `k` with `I^k = {0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitIdealSplit {
    pub units: Vec<usize>,
    /// Nonzero non-units.
    pub ideal: Vec<usize>,
    pub nilpotency_index: usize,
    is_unit: Vec<bool>,
}

impl UnitIdealSplit {
    pub fn is_unit(&self, x: usize) -> bool {
        self.is_unit.get(x).copied().unwrap_or(false)
    }
}

#[derive(Clone, Debug)]
pub struct QuotientModification {
    pub quotient: Modification,
    /// Element of `S` (nonzero) to coset index in `S/U`.
    pub projection: Vec<usize>,
    /// Least element of each coset.
    pub coset_reps: Vec<usize>,
}

/// Modification JSON: `{"group": <group>, "zero_pairs": [[i, j], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModificationJson {
    pub group: GroupJson,
    pub zero_pairs: Vec<[usize; 2]>,
}

impl From<&Modification> for ModificationJson {
    fn from(m: &Modification) -> Self {
        ModificationJson {
            group: GroupJson::from(m.group.as_ref()),
            zero_pairs: m.zero_pairs.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl TryFrom<ModificationJson> for Modification {
    type Error = Error;
    fn try_from(j: ModificationJson) -> Result<Self> {
        let g = Arc::new(FiniteGroup::try_from(j.group)?);
        Modification::from_zero_set(g, j.zero_pairs.into_iter().map(|[a, b]| (a, b)))
    }
}
