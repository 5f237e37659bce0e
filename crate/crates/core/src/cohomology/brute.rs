//! Exhaustive cohomology for tiny complexes; an oracle for the lattice
//! computation.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::complex::{coboundary, domain, Cochain, CochainDomain};
use super::module::ZeroModule;
use crate::error::{Error, Result};

/// Order of the group and how many elements have each order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForceResult {
    pub order: u64,
    pub element_orders: BTreeMap<u64, u64>,
}

/// Every cochain over `domain`, in mixed-radix order.
fn all_cochains<'a>(dom: &Arc<CochainDomain>, orders: &'a [u64]) -> impl Iterator<Item = Cochain> + 'a {
    let radices: Vec<u64> = (0..dom.len()).flat_map(|_| orders.iter().copied()).collect();
    let total: u64 = radices.iter().product();
    let dom = dom.clone();
    (0..total).map(move |mut k| {
        let values = radices
            .iter()
            .map(|&m| {
                let v = k % m;
                k /= m;
                v
            })
            .collect();
        Cochain::from_values(dom.clone(), orders, values).expect("sized to the domain")
    })
}

fn count(dom: &CochainDomain, module_order: u64, budget: u64) -> Result<u64> {
    let needed = (module_order as u128).checked_pow(dom.len() as u32);
    match needed {
        Some(n) if n <= budget as u128 => Ok(n as u64),
        _ => Err(Error::BudgetExceeded {
            needed: format!("{module_order}^{}", dom.len()),
            budget,
        }),
    }
}

/// `H^n_0` by enumerating every cochain of `C^n` and `C^{n-1}`.
pub fn brute_force_cohomology(module: &ZeroModule, n: usize, budget: u64) -> Result<BruteForceResult> {
    if n > super::slice::MAX_DIMENSION {
        return Err(Error::DimensionUnsupported(n));
    }
    let s = module.semigroup();
    let a: u64 = module.orders().iter().product();
    let dn = Arc::new(domain(s, n));
    let dn1 = Arc::new(domain(s, n + 1));
    count(&dn, a, budget)?;

    let cocycles: Vec<Vec<u64>> = all_cochains(&dn, module.orders())
        .filter(|f| coboundary(module, f, &dn1).expect("domains match").is_zero())
        .map(|f| f.values().to_vec())
        .collect();

    let mut boundaries: HashSet<Vec<u64>> = HashSet::new();
    if n == 0 {
        boundaries.insert(vec![0; dn.len() * module.rank()]);
    } else {
        let dp = Arc::new(domain(s, n - 1));
        count(&dp, a, budget)?;
        for f in all_cochains(&dp, module.orders()) {
            boundaries.insert(coboundary(module, &f, &dn)?.values().to_vec());
        }
    }

    let order = cocycles.len() as u64 / boundaries.len() as u64;
    let r = module.rank();
    let add = |x: &[u64], y: &[u64]| -> Vec<u64> {
        x.iter()
            .zip(y)
            .enumerate()
            .map(|(k, (&u, &v))| (u + v) % module.orders()[k % r])
            .collect()
    };
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut element_orders = BTreeMap::new();
    for z in &cocycles {
        if seen.contains(z) {
            continue;
        }
        for b in &boundaries {
            seen.insert(add(z, b));
        }
        let mut k = 1u64;
        let mut multiple = z.clone();
        while !boundaries.contains(&multiple) {
            multiple = add(&multiple, z);
            k += 1;
        }
        *element_orders.entry(k).or_insert(0) += 1;
    }
    Ok(BruteForceResult { order, element_orders })
}

/// Element-order multiset of `Z/d_1 + ... + Z/d_k`.
pub fn element_order_multiset(factors: &[BigInt]) -> BTreeMap<u64, u64> {
    let factors: Vec<u64> = factors.iter().map(|d| d.to_u64().expect("small factor")).collect();
    let mut out = BTreeMap::new();
    let total: u64 = factors.iter().product();
    for mut k in 0..total {
        let mut ord = 1u64;
        for &d in &factors {
            let v = k % d;
            k /= d;
            ord = num_integer::lcm(ord, d / num_integer::gcd(v, d));
        }
        *out.entry(ord).or_insert(0) += 1;
    }
    out
}
