//! Cohomology groups `H^n_0(S, A)` with explicit cocycle representatives.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::complex::{cochain_moduli, coboundary_matrix_between, domain, Cochain, CochainDomain, CochainJson};
use super::module::{reduce_big, ZeroModule};
use crate::algebra::{FiniteGroup, Modification};
use crate::error::{Error, Result};
use crate::linalg::{kernel_lattice, GroupSummary, IntMatrix, PresentedAbelianGroup, Subquotient};

/// Highest dimension accepted by [`cohomology`].
pub const MAX_DIMENSION: usize = 3;

/// One dimension of the cohomology of a module: the complex around degree
/// `n`, the group `Z^n / B^n` and one representative cocycle per invariant
/// generator.
#[derive(Clone, Debug)]
pub struct CohomologySlice {
    n: usize,
    module: Arc<ZeroModule>,
    domain_prev: Arc<CochainDomain>,
    domain_n: Arc<CochainDomain>,
    domain_n1: Arc<CochainDomain>,
    d_prev: IntMatrix,
    d_n: IntMatrix,
    sub: Subquotient,
    group: PresentedAbelianGroup,
    representatives: Vec<Cochain>,
}

impl CohomologySlice {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn module(&self) -> &Arc<ZeroModule> {
        &self.module
    }

    pub fn semigroup(&self) -> &Modification {
        self.module.semigroup()
    }

    pub fn domain_n(&self) -> &Arc<CochainDomain> {
        &self.domain_n
    }

    pub fn domain_n1(&self) -> &Arc<CochainDomain> {
        &self.domain_n1
    }

    /// Domain of `C^{n-1}`; for `n = 0` an empty domain.
    pub fn domain_prev(&self) -> &Arc<CochainDomain> {
        &self.domain_prev
    }

    /// `∂^{n-1}: C^{n-1} -> C^n`.
    pub fn d_n_minus_1(&self) -> &IntMatrix {
        &self.d_prev
    }

    /// `∂^n: C^n -> C^{n+1}`.
    pub fn d_n(&self) -> &IntMatrix {
        &self.d_n
    }

    /// The group, presented by its invariant factors: coordinates of a
    /// class are coefficients of the representatives.
    pub fn group(&self) -> &PresentedAbelianGroup {
        &self.group
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        self.group.invariant_factors()
    }

    pub fn order(&self) -> BigInt {
        self.group.order().expect("cohomology of a finite module is finite")
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    pub fn zero_cochain(&self) -> Cochain {
        Cochain::zero(self.domain_n.clone(), self.module.orders())
    }

    /// Whether `∂^n z = 0`.
    pub fn is_cocycle(&self, z: &Cochain) -> bool {
        let moduli = cochain_moduli(&self.domain_n1, self.module.orders());
        self.d_n
            .apply(&z.to_big())
            .iter()
            .zip(&moduli)
            .all(|(v, m)| (v % m).is_zero())
    }

    fn check_domain(&self, z: &Cochain) -> Result<()> {
        if z.domain().as_ref() != self.domain_n.as_ref() || z.orders() != self.module.orders() {
            return Err(Error::DimensionMismatch("cochain does not belong to this complex".into()));
        }
        Ok(())
    }

    /// Coordinates of `[z]` in terms of the representatives, reduced modulo
    /// the invariant factors.
    pub fn class_coordinates(&self, z: &Cochain) -> Result<Vec<BigInt>> {
        self.check_domain(z)?;
        if !self.is_cocycle(z) {
            return Err(Error::NotACocycle);
        }
        let y = self.sub.coords(&z.to_big())?;
        Ok(self.group.reduce_invariant(&y))
    }

    /// Whether `z` is a coboundary.
    pub fn is_coboundary(&self, z: &Cochain) -> Result<bool> {
        Ok(self.class_coordinates(z)?.iter().all(Zero::is_zero))
    }

    /// The cocycle `Σ y_i · rep_i`.
    pub fn cocycle_from_coordinates(&self, y: &[BigInt]) -> Result<Cochain> {
        if y.len() != self.representatives.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for {} generators",
                y.len(),
                self.representatives.len()
            )));
        }
        let y = self.group.reduce_invariant(y);
        let mut acc = self.zero_cochain();
        for (yi, rep) in y.iter().zip(&self.representatives) {
            let k: u64 = yi.try_into().expect("reduced coordinate fits");
            acc = acc.add(&rep.scale(k));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> SliceJson {
        SliceJson {
            n: self.n,
            group: self.group.summary(),
            order: self.order().to_string(),
            representatives: self.representatives.iter().map(Cochain::to_json).collect(),
        }
    }
}

/// Slice export: the group and its representative cocycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceJson {
    pub n: usize,
    pub group: GroupSummary,
    pub order: String,
    pub representatives: Vec<CochainJson>,
}

/// `H^n_0(S, A)` by lattice arithmetic over the coefficient orders.
pub fn cohomology(module: &ZeroModule, n: usize) -> Result<CohomologySlice> {
    cohomology_shared(Arc::new(module.clone()), n)
}

pub fn cohomology_shared(module: Arc<ZeroModule>, n: usize) -> Result<CohomologySlice> {
    if n > MAX_DIMENSION {
        return Err(Error::DimensionUnsupported(n));
    }
    let s = module.semigroup();
    let orders = module.orders();
    let domain_n = Arc::new(domain(s, n));
    let domain_n1 = Arc::new(domain(s, n + 1));
    let domain_prev = Arc::new(if n == 0 { CochainDomain::empty() } else { domain(s, n - 1) });

    let d_n = coboundary_matrix_between(&module, &domain_n, &domain_n1);
    let d_prev = if n == 0 {
        IntMatrix::zeros(domain_n.len() * orders.len(), 0)
    } else {
        coboundary_matrix_between(&module, &domain_prev, &domain_n)
    };

    let moduli_n = cochain_moduli(&domain_n, orders);
    let moduli_n1 = cochain_moduli(&domain_n1, orders);
    let cocycles = kernel_lattice(&d_n, &moduli_n1, &moduli_n);

    let mut boundaries: Vec<Vec<BigInt>> = (0..d_prev.cols()).map(|j| d_prev.column(j)).collect();
    for (i, m) in moduli_n.iter().enumerate() {
        let mut e = vec![BigInt::zero(); moduli_n.len()];
        e[i] = m.clone();
        boundaries.push(e);
    }
    let sub = Subquotient::new(cocycles, boundaries, moduli_n.clone())?;
    let group = PresentedAbelianGroup::diagonal(sub.group().invariant_factors());

    let mut representatives = Vec::with_capacity(sub.num_generators());
    for i in 0..sub.num_generators() {
        let v = sub.generator(i);
        let reps: Vec<u64> = orders.iter().cycle().take(v.len()).copied().collect();
        let mut z = Cochain::from_values(domain_n.clone(), orders, reduce_big(&v, &reps))?;
        if n == 2 {
            z = normalize_two_cocycle(&module, &z)?;
        }
        representatives.push(z);
    }

    Ok(CohomologySlice {
        n,
        module,
        domain_prev,
        domain_n,
        domain_n1,
        d_prev,
        d_n,
        sub,
        group,
        representatives,
    })
}

/// Subtracts the coboundary of the constant 1-cochain `f(1,1)`; the result
/// vanishes at every pair containing the identity.
pub fn normalize_two_cocycle(module: &ZeroModule, f: &Cochain) -> Result<Cochain> {
    let s = module.semigroup();
    let c = f
        .at(&[0, 0])
        .ok_or_else(|| Error::DimensionMismatch("not a 2-cochain".into()))?
        .to_vec();
    if module.is_zero(&c) {
        return Ok(f.clone());
    }
    let d1 = Arc::new(domain(s, 1));
    let mut constant = Cochain::zero(d1, module.orders());
    for i in 0..constant.domain().len() {
        constant.set(i, &c);
    }
    let shift = super::complex::coboundary(module, &constant, f.domain())?;
    Ok(f.sub(&shift))
}

/// Classical cohomology `H^n(G, A)`, computed on the full modification.
pub fn group_cohomology(group: Arc<FiniteGroup>, orders: Vec<u64>, action: Vec<Vec<Vec<u64>>>, n: usize) -> Result<CohomologySlice> {
    let module = ZeroModule::new(Modification::full(group), orders, action)?;
    cohomology(&module, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn order(slice: &CohomologySlice) -> u64 {
        slice.order().try_into().unwrap()
    }

    #[test]
    fn spec_examples() {
        let frob = |s| ZeroModule::new(s, vec![3], vec![vec![vec![1]], vec![vec![2]]]).unwrap();
        assert_eq!(order(&cohomology(&frob(Modification::full(c(2))), 2).unwrap()), 1);
        assert_eq!(order(&cohomology(&frob(Modification::annihilator(c(2))), 2).unwrap()), 1);
        let triv = ZeroModule::trivial_action(Modification::full(c(2)), vec![2]).unwrap();
        let h2 = cohomology(&triv, 2).unwrap();
        assert_eq!(h2.invariant_factors(), &[BigInt::from(2)]);
    }

    #[test]
    fn group_cohomology_examples() {
        let h2 = group_cohomology(c(2), vec![2], vec![vec![vec![1]], vec![vec![1]]], 2).unwrap();
        assert_eq!(order(&h2), 2);
        let h1 = group_cohomology(c(2), vec![3], vec![vec![vec![1]], vec![vec![2]]], 1).unwrap();
        assert_eq!(order(&h1), 1);
        assert_eq!(order(&group_cohomology(c(1), vec![5], vec![vec![vec![1]]], 2).unwrap()), 1);
        let h0 = group_cohomology(c(2), vec![3], vec![vec![vec![1]], vec![vec![2]]], 0).unwrap();
        assert_eq!(order(&h0), 1);
    }

    #[test]
    fn dimension_bound() {
        let m = ZeroModule::trivial_action(Modification::full(c(2)), vec![2]).unwrap();
        assert_eq!(cohomology(&m, 4).unwrap_err(), Error::DimensionUnsupported(4));
    }

    #[test]
    fn representatives_are_normalized_cocycles() {
        for d in 2..=4 {
            let g = c(d);
            for s in crate::algebra::enumerate_modifications(&g).unwrap() {
                let m = ZeroModule::trivial_action(s.clone(), vec![d as u64]).unwrap();
                let h = cohomology(&m, 2).unwrap();
                for (i, rep) in h.representatives().iter().enumerate() {
                    assert!(h.is_cocycle(rep));
                    for t in 0..d {
                        assert!(m.is_zero(rep.at(&[0, t]).unwrap()));
                        assert!(m.is_zero(rep.at(&[t, 0]).unwrap()));
                    }
                    let mut e = vec![BigInt::zero(); h.representatives().len()];
                    e[i] = BigInt::from(1);
                    assert_eq!(h.class_coordinates(rep).unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn class_coordinates_linear_and_kill_coboundaries() {
        let m = ZeroModule::trivial_action(Modification::full(c(4)), vec![2, 4]).unwrap();
        let h = cohomology(&m, 2).unwrap();
        let k = h.representatives().len();
        assert!(k >= 2);
        let sum = h.representatives()[0].add(&h.representatives()[1]);
        let mut expect = vec![BigInt::zero(); k];
        expect[0] = BigInt::from(1);
        expect[1] = BigInt::from(1);
        assert_eq!(h.class_coordinates(&sum).unwrap(), h.group().reduce_invariant(&expect));

        let d1 = h.domain_prev().clone();
        let vals: Vec<u64> = (0..d1.len() * 2).map(|i| (i as u64 * 3 + 1) % 4).collect();
        let f = Cochain::from_values(d1, &[2, 4], vals).unwrap();
        let b = super::super::complex::coboundary(&m, &f, h.domain_n()).unwrap();
        assert!(h.is_coboundary(&b).unwrap());
    }

    #[test]
    fn non_cocycle_rejected() {
        let m = ZeroModule::trivial_action(Modification::full(c(2)), vec![2]).unwrap();
        let h = cohomology(&m, 2).unwrap();
        let mut f = h.zero_cochain();
        f.set_at(&[1, 1], &[1]).unwrap();
        f.set_at(&[0, 1], &[1]).unwrap();
        assert_eq!(h.class_coordinates(&f).unwrap_err(), Error::NotACocycle);
    }
}
