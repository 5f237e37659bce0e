use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{FiniteGroup, Modification, QuotientModification, UnitIdealSplit};
use crate::error::{Error, Result};
use crate::linalg::{kernel_lattice, Echelon, IntMatrix, Subquotient};

/// Square matrix over the coefficients; entry `(i, j)` is reduced modulo
/// the `i`-th order. Acts on column vectors.
pub type ActionMatrix = Vec<Vec<u64>>;

/// A finite abelian group `A = Z/m_1 + ... + Z/m_r` with a partial action of a
/// modification: every nonzero element acts by an automorphism and
/// `s ⋆ t ≠ 0` implies `s(ta) = (st)a`.
#[derive(Clone, Debug)]
pub struct ZeroModule {
    semigroup: Modification,
    orders: Vec<u64>,
    action: Vec<ActionMatrix>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl ZeroModule {
    pub fn new(semigroup: Modification, orders: Vec<u64>, action: Vec<ActionMatrix>) -> Result<Self> {
        let r = orders.len();
        if orders.contains(&0) {
            return Err(Error::DimensionMismatch("coefficient orders must be positive".into()));
        }
        if action.len() != semigroup.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} elements",
                action.len(),
                semigroup.order()
            )));
        }
        let mut action = action;
        for (s, m) in action.iter_mut().enumerate() {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(Error::DimensionMismatch(format!("action matrix of element {s} is not {r}x{r}")));
            }
            for (i, row) in m.iter_mut().enumerate() {
                for x in row.iter_mut() {
                    *x %= orders[i];
                }
            }
        }
        let module = ZeroModule {
            semigroup,
            orders,
            action,
        };
        module.validate()?;
        Ok(module)
    }

    pub fn trivial_action(semigroup: Modification, orders: Vec<u64>) -> Result<Self> {
        let r = orders.len();
        let id = identity_matrix(&orders);
        let action = vec![id; semigroup.order()];
        debug_assert!(action.iter().all(|m| m.len() == r));
        Self::new(semigroup, orders, action)
    }

    /// Cyclic coefficients `Z/m` where element `k` of the cyclic group acts by
    /// multiplication with `generator^k`.
    pub fn cyclic_power_action(semigroup: Modification, modulus: u64, generator: u64) -> Result<Self> {
        let n = semigroup.order();
        let g = semigroup.group().clone();
        if *g != FiniteGroup::cyclic(n)? {
            return Err(Error::GroupMismatch);
        }
        let mut action = Vec::with_capacity(n);
        let mut acc = 1 % modulus;
        for _ in 0..n {
            action.push(vec![vec![acc]]);
            acc = mulmod(acc, generator % modulus, modulus);
        }
        Self::new(semigroup, vec![modulus], action)
    }

    fn validate(&self) -> Result<()> {
        let r = self.rank();
        let n = self.semigroup.order();
        let id = identity_matrix(&self.orders);
        if n > 0 && self.action[0] != id {
            return Err(Error::IdentityActsNontrivially);
        }
        let moduli = self.moduli_big();
        for s in 0..n {
            let m = &self.action[s];
            // Well defined on Z/m_j in column j.
            for i in 0..r {
                for j in 0..r {
                    if mulmod(m[i][j], self.orders[j], self.orders[i]) != 0 {
                        return Err(Error::NotAutomorphism(s));
                    }
                }
            }
            // Injective, hence bijective on a finite group.
            let k = kernel_lattice(&to_int_matrix(m), &moduli, &moduli);
            let full: BigInt = self.orders.iter().map(|&o| BigInt::from(o)).product();
            if k.index() != Some(full) {
                return Err(Error::NotAutomorphism(s));
            }
        }
        for s in 0..n {
            for t in 0..n {
                if let Some(st) = self.semigroup.star(s, t) {
                    if self.compose(&self.action[s], &self.action[t]) != self.action[st] {
                        return Err(Error::ActionIncompatible(s, t));
                    }
                }
            }
        }
        Ok(())
    }

    fn compose(&self, a: &ActionMatrix, b: &ActionMatrix) -> ActionMatrix {
        let r = self.rank();
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let m = self.orders[i] as u128;
                        let v: u128 = (0..r).map(|k| a[i][k] as u128 * b[k][j] as u128 % m).sum();
                        (v % m) as u64
                    })
                    .collect()
            })
            .collect()
    }

    pub fn semigroup(&self) -> &Modification {
        &self.semigroup
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic summands.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `|A|`, saturating.
    pub fn coefficient_order(&self) -> u128 {
        self.orders.iter().fold(1u128, |acc, &m| acc.saturating_mul(m as u128))
    }

    pub fn moduli_big(&self) -> Vec<BigInt> {
        self.orders.iter().map(|&m| BigInt::from(m)).collect()
    }

    pub fn action(&self, s: usize) -> &ActionMatrix {
        &self.action[s]
    }

    pub fn act(&self, s: usize, a: &[u64]) -> Vec<u64> {
        let m = &self.action[s];
        (0..self.rank())
            .map(|i| {
                let o = self.orders[i] as u128;
                let v: u128 = m[i].iter().zip(a).map(|(&x, &y)| x as u128 * y as u128 % o).sum();
                (v % o) as u64
            })
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((&x, &y), &m)| ((x as u128 + y as u128) % m as u128) as u64)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(&x, &m)| (m - x % m) % m).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: u64, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(&x, &m)| mulmod(k % m, x, m)).collect()
    }

    pub fn reduce(&self, a: &[BigInt]) -> Vec<u64> {
        reduce_big(a, &self.orders)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    /// Same coefficients and action over a modification `s ≺ self.semigroup()`.
    pub fn restrict_to(&self, s: &Modification) -> Result<ZeroModule> {
        if !s.is_preceq(&self.semigroup)? {
            return Err(Error::NotComparable);
        }
        Self::new(s.clone(), self.orders.clone(), self.action.clone())
    }

    /// The action restricted to a subgroup, as a module over that subgroup with
    /// an adjoined zero. Returns the module and the embedding of indices.
    pub fn restrict_to_subgroup(&self, elements: &[usize]) -> Result<(ZeroModule, Vec<usize>)> {
        let (h, emb) = self.semigroup.group().subgroup(elements)?;
        let full = Modification::full(Arc::new(h));
        let action = emb.iter().map(|&x| self.action[x].clone()).collect();
        Ok((Self::new(full, self.orders.clone(), action)?, emb))
    }
}

pub(crate) fn identity_matrix(orders: &[u64]) -> ActionMatrix {
    let r = orders.len();
    (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j) % orders[i]).collect())
        .collect()
}

pub(crate) fn to_int_matrix(m: &ActionMatrix) -> IntMatrix {
    let r = m.len();
    let rows = m.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
    IntMatrix::from_rows(r, rows).expect("square action matrix")
}

pub(crate) fn reduce_big(a: &[BigInt], orders: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(orders)
        .map(|(x, &m)| {
            let r = crate::linalg::mod_floor(x, &BigInt::from(m));
            r.to_u64().expect("reduced value fits")
        })
        .collect()
}

/// The submodule `A^U` of elements fixed by every unit, presented as
/// `Z/m'_1 + ... + Z/m'_k` together with its embedding into `A`.
#[derive(Clone, Debug)]
pub struct FixedSubmodule {
    sub: Subquotient,
    orders: Vec<u64>,
    /// Column `j` is the image of the `j`-th generator in `A`.
    embedding: Vec<Vec<u64>>,
    ambient_orders: Vec<u64>,
}

impl FixedSubmodule {
    pub fn new(module: &ZeroModule, units: &[usize]) -> Result<Self> {
        let r = module.rank();
        let moduli = module.moduli_big();
        // Stack (M_u - I) for all units; its kernel mod the orders is A^U.
        let mut rows = Vec::new();
        let mut row_moduli = Vec::new();
        for &u in units {
            let m = module.action(u);
            for i in 0..r {
                let row: Vec<BigInt> = (0..r)
                    .map(|j| BigInt::from(m[i][j]) - BigInt::from(u64::from(i == j)))
                    .collect();
                rows.push(row);
                row_moduli.push(moduli[i].clone());
            }
        }
        let stacked = IntMatrix::from_rows(r, rows)?;
        let kernel: Echelon = kernel_lattice(&stacked, &row_moduli, &moduli);
        let denominators: Vec<Vec<BigInt>> = (0..r)
            .map(|i| {
                let mut v = vec![BigInt::zero(); r];
                v[i] = moduli[i].clone();
                v
            })
            .collect();
        let sub = Subquotient::new(kernel, denominators, moduli)?;
        let orders: Vec<u64> = sub
            .group()
            .invariant_factors()
            .iter()
            .map(|d| d.to_u64().expect("finite coefficients"))
            .collect();
        let embedding: Vec<Vec<u64>> = (0..orders.len())
            .map(|j| reduce_big(&sub.generator(j), module.orders()))
            .collect();
        Ok(FixedSubmodule {
            sub,
            orders,
            embedding,
            ambient_orders: module.orders().to_vec(),
        })
    }

    /// Orders of the cyclic summands of `A^U`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&m| m as u128).product()
    }

    /// Images in `A` of the generators of `A^U`.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.embedding
    }

    /// Coordinates of a fixed element of `A`.
    pub fn coords(&self, v: &[u64]) -> Result<Vec<u64>> {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let y = self.sub.coords(&big)?;
        Ok(reduce_big(&y, &self.orders))
    }

    /// The element of `A` with coordinates `y`.
    pub fn embed(&self, y: &[u64]) -> Vec<u64> {
        let r = self.ambient_orders.len();
        (0..r)
            .map(|i| {
                let m = self.ambient_orders[i] as u128;
                let v: u128 = y
                    .iter()
                    .zip(&self.embedding)
                    .map(|(&c, g)| c as u128 * g[i] as u128 % m)
                    .sum();
                (v % m) as u64
            })
            .collect()
    }

    /// `A^U` as a 0-module over `S/U`: the coset `Ut` acts through `t`.
    pub fn quotient_module(&self, module: &ZeroModule, quotient: &QuotientModification) -> Result<ZeroModule> {
        let k = self.orders.len();
        let action = quotient
            .coset_reps
            .iter()
            .map(|&t| {
                let mut m = vec![vec![0u64; k]; k];
                for j in 0..k {
                    let image = module.act(t, &self.embedding[j]);
                    let c = self.coords(&image)?;
                    for i in 0..k {
                        m[i][j] = c[i];
                    }
                }
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        ZeroModule::new(quotient.quotient.clone(), self.orders.clone(), action)
    }
}

/// Units of `s` restricted module, quotient modification and fixed submodule,
/// everything the maps around `S/U` need.
#[derive(Clone, Debug)]
pub struct UnitContext {
    pub split: UnitIdealSplit,
    pub quotient: QuotientModification,
    pub units_module: Arc<ZeroModule>,
    /// Subgroup index to element index of `S`.
    pub units_embedding: Vec<usize>,
    pub fixed: FixedSubmodule,
    pub quotient_module: Arc<ZeroModule>,
}

impl UnitContext {
    pub fn new(module: &ZeroModule) -> Result<Self> {
        let s = module.semigroup();
        let split = s.unit_group();
        let quotient = s.quotient_by_units(&split)?;
        let (units_module, units_embedding) = module.restrict_to_subgroup(&split.units)?;
        let fixed = FixedSubmodule::new(module, &split.units)?;
        let quotient_module = fixed.quotient_module(module, &quotient)?;
        Ok(UnitContext {
            split,
            quotient,
            units_module: Arc::new(units_module),
            units_embedding,
            fixed,
            quotient_module: Arc::new(quotient_module),
        })
    }
}
