//! Extensions of finite fields `F_{p^m} ⊂ F_{p^n}` as 0-modules: the cyclic
//! Galois group acting on `L^× ≅ Z/(p^n - 1)` by multiplication with `p^m`.

mod concrete;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use concrete::{concrete_field, crosscheck_frobenius, ConcreteField};

use crate::algebra::{FiniteGroup, Modification, UnitIdealSplit};
use crate::cohomology::{FixedSubmodule, ZeroModule};
use crate::error::{Error, Result};

/// Default bound on `p^n`.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 16;

/// Trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// `F_{p^m} ⊂ F_{p^n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtensionDescriptor {
    pub p: u64,
    pub m: u32,
    pub n: u32,
}

impl ExtensionDescriptor {
    /// Galois degree `n / m`.
    pub fn degree(&self) -> u32 {
        self.n / self.m
    }

    /// `|L| = p^n`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.n)
    }

    /// `|K| = p^m`.
    pub fn base_order(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// `|L^×|`.
    pub fn unit_order(&self) -> u64 {
        self.q() - 1
    }
}

impl fmt::Display for ExtensionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}/F{}", self.q(), self.base_order())
    }
}

/// Validated descriptor with the default size bound.
pub fn extension(p: u64, m: u32, n: u32) -> Result<ExtensionDescriptor> {
    extension_bounded(p, m, n, DEFAULT_FIELD_BOUND)
}

pub fn extension_bounded(p: u64, m: u32, n: u32, bound: u64) -> Result<ExtensionDescriptor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 || n == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotDivisible { m, n });
    }
    match p.checked_pow(n) {
        Some(q) if q <= bound => Ok(ExtensionDescriptor { p, m, n }),
        _ => Err(Error::TooLarge { p, n, bound }),
    }
}

/// Writes `q` as `p^k` for a prime `p`.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|k| q.is_multiple_of(*k))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl ExtensionDescriptor {
    /// `"2:16"` (field orders of `K` and `L`) or `"p=2,m=1,n=4"`, with
    /// `|L| <= bound`.
    pub fn parse_bounded(s: &str, bound: u64) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad extension spec {s:?}"));
        if let Some((k, l)) = s.split_once(':') {
            let k: u64 = k.trim().parse().map_err(|_| bad())?;
            let l: u64 = l.trim().parse().map_err(|_| bad())?;
            if l > bound {
                let (p, _) = prime_power(k).ok_or_else(bad)?;
                let n = (1..).find(|&n| p.checked_pow(n).is_none_or(|x| x >= l)).unwrap_or(u32::MAX);
                return Err(Error::TooLarge { p, n, bound });
            }
            let (p, m) = prime_power(k).ok_or_else(bad)?;
            let (p2, n) = prime_power(l).ok_or_else(bad)?;
            if p != p2 {
                return Err(Error::Parse(format!("{k} and {l} have different characteristic")));
            }
            return extension_bounded(p, m, n, bound);
        }
        let (mut p, mut m, mut n) = (None, None, None);
        for part in s.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "p" => p = Some(value),
                "m" => m = Some(u32::try_from(value).map_err(|_| bad())?),
                "n" => n = Some(u32::try_from(value).map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        extension_bounded(p.ok_or_else(bad)?, m.ok_or_else(bad)?, n.ok_or_else(bad)?, bound)
    }
}

impl FromStr for ExtensionDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_bounded(s, DEFAULT_FIELD_BOUND)
    }
}

/// `L^×` as a module over the Galois group `C_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisModuleSpec {
    #[serde(skip)]
    pub group: Arc<FiniteGroup>,
    pub orders: Vec<u64>,
    /// Multiplier of the generator.
    pub generator_multiplier: u64,
}

impl GaloisModuleSpec {
    /// The same coefficients over a modification of `C_d`.
    pub fn module_over(&self, s: &Modification) -> Result<ZeroModule> {
        if s.group().as_ref() != self.group.as_ref() {
            return Err(Error::GroupMismatch);
        }
        ZeroModule::cyclic_power_action(s.clone(), self.orders[0], self.generator_multiplier)
    }

    pub fn full_module(&self) -> Result<ZeroModule> {
        self.module_over(&Modification::full(self.group.clone()))
    }
}

pub fn galois_module(e: &ExtensionDescriptor) -> Result<GaloisModuleSpec> {
    let group = Arc::new(FiniteGroup::cyclic(e.degree() as usize)?);
    let q1 = e.unit_order();
    Ok(GaloisModuleSpec {
        group,
        orders: vec![q1],
        generator_multiplier: e.base_order() % q1.max(1),
    })
}

/// The fixed field `P` of the subgroup of order `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubfieldData {
    pub subgroup_order: u64,
    pub p_exponent: u32,
    pub p_order: u64,
    pub embedding_index: u64,
}

/// Data of `P = L^U` for `|U| = u`, checked against a direct computation of
/// the fixed points in `Z/(p^n - 1)`.
pub fn fixed_data(e: &ExtensionDescriptor, u: u64) -> Result<SubfieldData> {
    let d = e.degree() as u64;
    if u == 0 || !d.is_multiple_of(u) {
        return Err(Error::NotASubgroupOrder(u));
    }
    let p_exponent = e.n / u as u32;
    let p_order = e.p.pow(p_exponent) - 1;
    let q1 = e.unit_order();
    let embedding_index = q1 / p_order;

    // U is generated by the (d/u)-th power of the generator.
    let multiplier = pow_mod(e.base_order(), d / u, q1);
    let fixed: Vec<u64> = (0..q1)
        .filter(|&a| (a as u128 * multiplier as u128 % q1 as u128) as u64 == a)
        .collect();
    let expected: Vec<u64> = (0..p_order).map(|k| k * embedding_index).collect();
    if !q1.is_multiple_of(p_order) || fixed != expected {
        return Err(Error::FixedPointMismatch(u));
    }
    Ok(SubfieldData {
        subgroup_order: u,
        p_exponent,
        p_order,
        embedding_index,
    })
}

/// `P^×` as a module over `S/U`: coefficients `Z/(p^{n/u} - 1)`, the coset of
/// `g^k` acting by `p^{mk}`. Cross-checked against the generic fixed
/// submodule of `L^×`.
pub fn quotient_galois_module(e: &ExtensionDescriptor, s: &Modification, split: &UnitIdealSplit) -> Result<ZeroModule> {
    let spec = galois_module(e)?;
    let module = spec.module_over(s)?;
    let quotient = s.quotient_by_units(split)?;
    let data = fixed_data(e, split.units.len() as u64)?;
    let action = quotient
        .coset_reps
        .iter()
        .map(|&t| vec![vec![pow_mod(e.base_order(), t as u64, data.p_order)]])
        .collect();
    let out = ZeroModule::new(quotient.quotient.clone(), vec![data.p_order], action)?;

    let generic = FixedSubmodule::new(&module, &split.units)?;
    if generic.order() != data.p_order as u128 {
        return Err(Error::FixedPointMismatch(split.units.len() as u64));
    }
    // Coset actions agree on the embedded generator.
    let gen = vec![data.embedding_index % e.unit_order()];
    for (c, &t) in quotient.coset_reps.iter().enumerate() {
        let via_l = module.act(t, &gen);
        let via_p = out.act(c, &[1 % data.p_order.max(1)]);
        let embedded = (via_p[0] as u128 * data.embedding_index as u128 % e.unit_order() as u128) as u64;
        if via_l != vec![embedded] {
            return Err(Error::FixedPointMismatch(split.units.len() as u64));
        }
    }
    Ok(out)
}
