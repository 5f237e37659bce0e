//! Partial cochains: domains, cochains, and the coboundary operator both as
//! a direct formula and as an integer matrix.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::module::ZeroModule;
use crate::algebra::Modification;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The `n`-tuples of nonzero elements whose product is nonzero, in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainDomain {
    n: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl CochainDomain {
    pub fn new(s: &Modification, n: usize) -> Self {
        let mut tuples = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        extend(s, n, 0, &mut prefix, &mut tuples);
        let index = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        CochainDomain { n, tuples, index }
    }

    /// A domain with no tuples, standing in for `C^{-1}`.
    pub fn empty() -> Self {
        CochainDomain {
            n: 0,
            tuples: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }
}

// Products are prefix-closed (zero absorbs), so extending only nonzero
// prefixes enumerates exactly the domain.
fn extend(s: &Modification, n: usize, acc: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for x in 0..s.order() {
        if let Some(p) = s.star(acc, x) {
            prefix.push(x);
            extend(s, n, p, prefix, out);
            prefix.pop();
        }
    }
}

/// `domain(S, n)`.
pub fn domain(s: &Modification, n: usize) -> CochainDomain {
    CochainDomain::new(s, n)
}

/// A cochain with values in `A`, stored flat: `rank` coefficients per tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    domain: Arc<CochainDomain>,
    orders: Vec<u64>,
    values: Vec<u64>,
}

impl Cochain {
    pub fn zero(domain: Arc<CochainDomain>, orders: &[u64]) -> Self {
        let values = vec![0; domain.len() * orders.len()];
        Cochain {
            domain,
            orders: orders.to_vec(),
            values,
        }
    }

    /// From a flat coefficient vector; values are reduced.
    pub fn from_values(domain: Arc<CochainDomain>, orders: &[u64], values: Vec<u64>) -> Result<Self> {
        if values.len() != domain.len() * orders.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} tuples of rank {}",
                values.len(),
                domain.len(),
                orders.len()
            )));
        }
        let r = orders.len();
        let values = values.iter().enumerate().map(|(k, &v)| v % orders[k % r]).collect();
        Ok(Cochain {
            domain,
            orders: orders.to_vec(),
            values,
        })
    }

    pub fn from_big(domain: Arc<CochainDomain>, orders: &[u64], v: &[BigInt]) -> Result<Self> {
        let reps: Vec<u64> = orders.iter().cycle().take(v.len()).copied().collect();
        Self::from_values(domain, orders, super::module::reduce_big(v, &reps))
    }

    pub fn domain(&self) -> &Arc<CochainDomain> {
        &self.domain
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value at the `i`-th tuple of the domain.
    pub fn get(&self, i: usize) -> &[u64] {
        let r = self.rank();
        &self.values[i * r..(i + 1) * r]
    }

    /// Value at a tuple; `None` when the tuple is outside the domain.
    pub fn at(&self, tuple: &[usize]) -> Option<&[u64]> {
        self.domain.position(tuple).map(|i| self.get(i))
    }

    pub fn set(&mut self, i: usize, value: &[u64]) {
        let r = self.rank();
        for (k, (dst, &v)) in self.values[i * r..(i + 1) * r].iter_mut().zip(value).enumerate() {
            *dst = v % self.orders[k];
        }
    }

    pub fn set_at(&mut self, tuple: &[usize], value: &[u64]) -> Result<()> {
        let i = self
            .domain
            .position(tuple)
            .ok_or_else(|| Error::DimensionMismatch(format!("tuple {tuple:?} is outside the domain")))?;
        self.set(i, value);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn combine(&self, other: &Cochain, sign: bool) -> Cochain {
        assert_eq!(self.domain.len(), other.domain.len(), "cochains on different domains");
        assert_eq!(self.orders, other.orders, "cochains with different coefficients");
        let r = self.rank();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(k, (&a, &b))| {
                let m = self.orders[k % r] as u128;
                let b = if sign { b as u128 } else { (m - b as u128 % m) % m };
                ((a as u128 + b) % m) as u64
            })
            .collect();
        Cochain {
            domain: self.domain.clone(),
            orders: self.orders.clone(),
            values,
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.combine(other, false)
    }

    pub fn scale(&self, k: u64) -> Cochain {
        let r = self.rank();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let m = self.orders[i % r] as u128;
                ((k as u128 % m) * v as u128 % m) as u64
            })
            .collect();
        Cochain {
            domain: self.domain.clone(),
            orders: self.orders.clone(),
            values,
        }
    }

    /// Restriction to a subdomain, each tuple mapped through `map` first.
    pub fn pull_back(&self, target: Arc<CochainDomain>, map: impl Fn(&[usize]) -> Vec<usize>) -> Result<Cochain> {
        let mut out = Cochain::zero(target.clone(), &self.orders);
        for (i, t) in target.tuples().iter().enumerate() {
            let image = map(t);
            let v = self
                .at(&image)
                .ok_or_else(|| Error::DimensionMismatch(format!("tuple {image:?} missing from source domain")))?;
            out.set(i, v);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> CochainJson {
        let r = self.rank();
        CochainJson {
            n: self.domain.dimension(),
            tuples: self.domain.tuples().to_vec(),
            values: self.values.chunks(r.max(1)).map(|c| c.to_vec()).take(self.domain.len()).collect(),
        }
    }
}

/// Cochain JSON: `{"n": n, "tuples": [[...]], "values": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub n: usize,
    pub tuples: Vec<Vec<usize>>,
    pub values: Vec<Vec<u64>>,
}

impl CochainJson {
    /// Rebuilds a cochain over `domain`; tuples must match its canonical order.
    pub fn into_cochain(self, domain: Arc<CochainDomain>, orders: &[u64]) -> Result<Cochain> {
        if self.n != domain.dimension() || self.tuples != domain.tuples() {
            return Err(Error::DimensionMismatch("cochain tuples do not match the domain".into()));
        }
        if self.values.iter().any(|v| v.len() != orders.len()) {
            return Err(Error::DimensionMismatch("cochain value has the wrong rank".into()));
        }
        Cochain::from_values(domain, orders, self.values.concat())
    }
}

/// Evaluates `∂f` at every tuple of `target` (a domain of dimension `n + 1`):
/// `s_1 f(s_2..) + Σ (-1)^i f(.., s_i s_{i+1}, ..) + (-1)^{n+1} f(s_1..s_n)`.
pub fn coboundary(module: &ZeroModule, f: &Cochain, target: &Arc<CochainDomain>) -> Result<Cochain> {
    let s = module.semigroup();
    let n = f.domain().dimension();
    if target.dimension() != n + 1 {
        return Err(Error::DimensionMismatch("target domain must have dimension n + 1".into()));
    }
    let missing = |t: &[usize]| Error::DimensionMismatch(format!("sub-tuple {t:?} outside the domain"));
    let mut out = Cochain::zero(target.clone(), module.orders());
    let mut sub = Vec::with_capacity(n);
    for (k, t) in target.tuples().iter().enumerate() {
        let tail = &t[1..];
        let mut acc = module.act(t[0], f.at(tail).ok_or_else(|| missing(tail))?);
        for i in 0..n {
            sub.clear();
            sub.extend_from_slice(&t[..i]);
            sub.push(s.star(t[i], t[i + 1]).expect("sub-products of a domain tuple are nonzero"));
            sub.extend_from_slice(&t[i + 2..]);
            let v = f.at(&sub).ok_or_else(|| missing(&sub))?;
            acc = if (i + 1) % 2 == 1 { module.sub(&acc, v) } else { module.add(&acc, v) };
        }
        let head = &t[..n];
        let v = f.at(head).ok_or_else(|| missing(head))?;
        acc = if (n + 1) % 2 == 1 { module.sub(&acc, v) } else { module.add(&acc, v) };
        out.set(k, &acc);
    }
    Ok(out)
}

/// The coboundary `C^n -> C^{n+1}` as an integer matrix: rows are indexed by
/// `(tuple of source_n1, coefficient)`, columns by `(tuple of source_n, coefficient)`.
/// Entries are reduced modulo the row's coefficient order.
pub fn coboundary_matrix_between(module: &ZeroModule, dn: &CochainDomain, dn1: &CochainDomain) -> IntMatrix {
    let s = module.semigroup();
    let r = module.rank();
    let n = dn.dimension();
    assert_eq!(dn1.dimension(), n + 1);
    let orders = module.orders();
    let mut acc = vec![0i128; dn1.len() * r * dn.len() * r];
    let width = dn.len() * r;
    let mut add_block = |row_tuple: usize, col_tuple: usize, block: &dyn Fn(usize, usize) -> i128| {
        for i in 0..r {
            for j in 0..r {
                acc[(row_tuple * r + i) * width + col_tuple * r + j] += block(i, j);
            }
        }
    };
    let identity = |sign: i128| move |i: usize, j: usize| if i == j { sign } else { 0 };
    for (k, t) in dn1.tuples().iter().enumerate() {
        let col = dn.position(&t[1..]).expect("tail in domain");
        let m = module.action(t[0]);
        add_block(k, col, &|i, j| m[i][j] as i128);
        let mut sub = Vec::with_capacity(n);
        for i in 0..n {
            sub.clear();
            sub.extend_from_slice(&t[..i]);
            sub.push(s.star(t[i], t[i + 1]).expect("sub-products of a domain tuple are nonzero"));
            sub.extend_from_slice(&t[i + 2..]);
            let col = dn.position(&sub).expect("merged tuple in domain");
            let sign = if (i + 1) % 2 == 1 { -1 } else { 1 };
            add_block(k, col, &identity(sign));
        }
        let col = dn.position(&t[..n]).expect("head in domain");
        let sign = if (n + 1) % 2 == 1 { -1 } else { 1 };
        add_block(k, col, &identity(sign));
    }
    let rows = dn1.len() * r;
    let mut out = IntMatrix::zeros(rows, width);
    for row in 0..rows {
        let m = orders[row % r.max(1)] as i128;
        for c in 0..width {
            let v = acc[row * width + c].rem_euclid(m);
            if v != 0 {
                out[(row, c)] = BigInt::from(v);
            }
        }
    }
    out
}

/// `∂^n` for the module, building the two domains.
pub fn coboundary_matrix(module: &ZeroModule, n: usize) -> IntMatrix {
    let s = module.semigroup();
    coboundary_matrix_between(module, &domain(s, n), &domain(s, n + 1))
}

/// Coefficient moduli of `C^n` coordinates over a domain.
pub fn cochain_moduli(domain: &CochainDomain, orders: &[u64]) -> Vec<BigInt> {
    (0..domain.len())
        .flat_map(|_| orders.iter().map(|&m| BigInt::from(m)))
        .collect()
}
