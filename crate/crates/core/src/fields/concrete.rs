//! A concrete model of `F_{p^n}` as `F_p[x]/(f)`, used to cross-check the
//! abstract Frobenius action.
//!
//! Elements are encoded as integers in `[0, p^n)`: digit `i` in base `p` is
//! the coefficient of `x^i`.

use serde::Serialize;

use super::{extension_bounded, is_prime, pow_mod, ExtensionDescriptor, DEFAULT_FIELD_BOUND};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct ConcreteField {
    pub p: u64,
    pub n: u32,
    /// Monic modulus, coefficients from `x^0` up to `x^n`.
    pub modulus: Vec<u64>,
    pub primitive: u64,
    #[serde(skip)]
    dlog: Vec<u64>,
    #[serde(skip)]
    exp: Vec<u64>,
}

fn decode(p: u64, n: u32, mut x: u64) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn encode(p: u64, coeffs: &[u64]) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the nonzero polynomial `b` over `F_p`.
fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = pow_mod(*b.last().expect("nonzero divisor"), p - 2, p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let n = f.len() - 1;
    // Any factorization has a monic factor of degree <= n/2.
    for deg in 1..=n / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut g = decode(p, deg as u32, low);
            g.push(1);
            if poly_rem(p, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

impl ConcreteField {
    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (p, n) = (self.p, self.n);
        let a = decode(p, n, a);
        let b = decode(p, n, b);
        let mut prod = vec![0u64; 2 * n as usize];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        encode(p, &poly_rem(p, &prod, &self.modulus))
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Exponent `k` with `primitive^k = z`, for `z != 0`.
    pub fn dlog(&self, z: u64) -> Option<u64> {
        (z != 0).then(|| self.dlog[z as usize])
    }

    /// `primitive^k`.
    pub fn exp(&self, k: u64) -> u64 {
        self.exp[(k % (self.order() - 1)) as usize]
    }
}

fn prime_factors(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= k {
        if k.is_multiple_of(f) {
            out.push(f);
            while k.is_multiple_of(f) {
                k /= f;
            }
        }
        f += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// `F_{p^n}` with the lexicographically first irreducible monic modulus
/// (coefficients compared from `x^{n-1}` down to `x^0`), the least primitive
/// element, and discrete-log tables.
pub fn concrete_field(p: u64, n: u32) -> Result<ConcreteField> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    extension_bounded(p, 1, n, DEFAULT_FIELD_BOUND)?;
    let q = p.pow(n);
    let modulus = (0..p.pow(n))
        .map(|low| {
            let mut f = decode(p, n, low);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree");
    let mut field = ConcreteField {
        p,
        n,
        modulus,
        primitive: 0,
        dlog: Vec::new(),
        exp: Vec::new(),
    };
    let q1 = q - 1;
    let factors = prime_factors(q1);
    field.primitive = (1..q)
        .find(|&g| factors.iter().all(|&r| field.pow(g, q1 / r) != 1))
        .expect("the multiplicative group is cyclic");
    let mut dlog = vec![u64::MAX; q as usize];
    let mut exp = Vec::with_capacity(q1 as usize);
    let mut z = 1;
    for k in 0..q1 {
        assert_eq!(dlog[z as usize], u64::MAX, "primitive element repeats");
        dlog[z as usize] = k;
        exp.push(z);
        z = field.mul(z, field.primitive);
    }
    assert_eq!(z, 1);
    field.dlog = dlog;
    field.exp = exp;
    Ok(field)
}

/// Whether `dlog(z^{p^m}) = p^m dlog(z)` for every nonzero `z` of `L`.
pub fn crosscheck_frobenius(e: &ExtensionDescriptor) -> Result<bool> {
    let field = concrete_field(e.p, e.n)?;
    let q1 = e.unit_order();
    let frob = e.base_order();
    Ok((1..e.q()).all(|z| {
        let image = field.pow(z, frob);
        let lhs = field.dlog(image).expect("image is nonzero");
        let rhs = (frob as u128 * field.dlog(z).expect("nonzero") as u128 % q1 as u128) as u64;
        lhs == rhs
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::extension;

    #[test]
    fn quadratic_over_f2() {
        let f = concrete_field(2, 2).unwrap();
        assert_eq!(f.modulus, vec![1, 1, 1]);
    }

    #[test]
    fn prime_field() {
        let f = concrete_field(2, 1).unwrap();
        assert_eq!(f.primitive, 1);
        let f = concrete_field(7, 1).unwrap();
        assert_eq!(f.primitive, 3);
    }

    #[test]
    fn f9_tables() {
        let f = concrete_field(3, 2).unwrap();
        assert_eq!(f.modulus.len(), 3);
        let logs: std::collections::BTreeSet<u64> = (1..9).map(|z| f.dlog(z).unwrap()).collect();
        assert_eq!(logs, (0..8).collect());
        assert!((1..9).all(|z| f.exp(f.dlog(z).unwrap()) == z));
    }

    #[test]
    fn frobenius_examples() {
        for (p, m, n) in [(2, 1, 2), (2, 1, 1), (3, 1, 2), (2, 2, 4), (5, 1, 3)] {
            assert!(crosscheck_frobenius(&extension(p, m, n).unwrap()).unwrap());
        }
    }

    #[test]
    fn bound() {
        assert!(matches!(concrete_field(2, 17), Err(Error::TooLarge { .. })));
    }
}
