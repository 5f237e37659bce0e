//! Checks of the semilattice-of-groups laws on a built monoid.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{BrauerMonoid, MonoidElement};
use crate::error::Result;
use crate::linalg::AbelianHom;

/// Element count up to which all triples are checked.
pub const DEFAULT_EXHAUSTIVE_BOUND: u64 = 64;
/// Triples drawn when the monoid is too large for the exhaustive check.
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SamplingMode {
    Exhaustive { elements: u64 },
    Sampled { seed: u64, triples: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct CliffordReport {
    pub mode: SamplingMode,
    pub chains_checked: usize,
    /// `(S)` with `ε_{S,S} != id`.
    pub identity_violations: Vec<usize>,
    /// `(U, T, S)` with `ε_{U,T} ε_{T,S} != ε_{U,S}`.
    pub functoriality_violations: Vec<[usize; 3]>,
    pub associativity_violations: Vec<[MonoidElement; 3]>,
    pub commutativity_violations: Vec<[MonoidElement; 2]>,
    pub unit_violations: Vec<MonoidElement>,
    pub passed: bool,
}

fn random_element(m: &BrauerMonoid, rng: &mut ChaCha8Rng) -> MonoidElement {
    let id = rng.gen_range(0..m.components().len());
    let g = m.components()[id].slice.group();
    let coords = g
        .invariant_factors()
        .iter()
        .map(|d| {
            let d: u64 = d.try_into().expect("small invariant factor");
            BigInt::from(rng.gen_range(0..d))
        })
        .collect();
    MonoidElement {
        modification_id: id,
        coords,
    }
}

/// Checks `ε_{S,S} = id`, `ε_{U,T} ε_{T,S} = ε_{U,S}` on all chains, that
/// multiplication is associative and commutative, and that `(G^0, 0)` is
/// the identity. All triples are checked when the monoid has at most
/// `exhaustive_bound` elements; otherwise `samples` seeded random ones.
pub fn verify_clifford(m: &BrauerMonoid, exhaustive_bound: u64, samples: usize, seed: u64) -> Result<CliffordReport> {
    let k = m.modifications().len();
    let mut identity_violations = Vec::new();
    for s in 0..k {
        let e = m.eps(s, s)?;
        if !e.equals(&AbelianHom::identity(m.components()[s].slice.group())) {
            identity_violations.push(s);
        }
    }

    let pairs = m.comparable_pairs()?;
    let chains: Vec<[usize; 3]> = pairs
        .iter()
        .flat_map(|&(u, t)| {
            pairs
                .iter()
                .filter(move |&&(t2, _)| t2 == t)
                .map(move |&(_, s)| [u, t, s])
        })
        .collect();
    let functoriality_violations: Vec<[usize; 3]> = chains
        .par_iter()
        .map(|&[u, t, s]| -> Result<Option<[usize; 3]>> {
            let composed = m.eps(u, t)?.then(&*m.eps(t, s)?)?;
            Ok((!composed.equals(&*m.eps(u, s)?)).then_some([u, t, s]))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let (mode, triples): (SamplingMode, Vec<[MonoidElement; 3]>) = match m.elements(exhaustive_bound) {
        Some(all) => {
            let mut t = Vec::with_capacity(all.len().pow(3));
            for x in &all {
                for y in &all {
                    for z in &all {
                        t.push([x.clone(), y.clone(), z.clone()]);
                    }
                }
            }
            (
                SamplingMode::Exhaustive {
                    elements: all.len() as u64,
                },
                t,
            )
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = (0..samples)
                .map(|_| {
                    [
                        random_element(m, &mut rng),
                        random_element(m, &mut rng),
                        random_element(m, &mut rng),
                    ]
                })
                .collect();
            (SamplingMode::Sampled { seed, triples: samples }, t)
        }
    };

    let results = triples
        .par_iter()
        .map(|[x, y, z]| -> Result<(bool, bool)> {
            let left = m.multiply(&m.multiply(x, y)?, z)?;
            let right = m.multiply(x, &m.multiply(y, z)?)?;
            let commutes = m.multiply(x, y)? == m.multiply(y, x)?;
            Ok((left == right, commutes))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut associativity_violations = Vec::new();
    let mut commutativity_violations = Vec::new();
    for (t, (assoc, comm)) in triples.iter().zip(results) {
        if !assoc {
            associativity_violations.push(t.clone());
        }
        if !comm {
            commutativity_violations.push([t[0].clone(), t[1].clone()]);
        }
    }

    let e = m.identity();
    let mut unit_violations = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in triples.iter().flat_map(|t| t.iter()) {
        if seen.insert(x.clone()) && (m.multiply(&e, x)? != *x || m.multiply(x, &e)? != *x) {
            unit_violations.push(x.clone());
        }
    }

    let passed = identity_violations.is_empty()
        && functoriality_violations.is_empty()
        && associativity_violations.is_empty()
        && commutativity_violations.is_empty()
        && unit_violations.is_empty();
    Ok(CliffordReport {
        mode,
        chains_checked: chains.len(),
        identity_violations,
        functoriality_violations,
        associativity_violations,
        commutativity_violations,
        unit_violations,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::extension;
    use crate::monoid::{build_galois_monoid, BuildOptions};

    #[test]
    fn small_monoids_pass() {
        let m = build_galois_monoid(&extension(2, 1, 2).unwrap(), &BuildOptions::default()).unwrap();
        let r = verify_clifford(&m, DEFAULT_EXHAUSTIVE_BOUND, DEFAULT_SAMPLES, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.mode, SamplingMode::Exhaustive { elements: 2 });

        let m = build_galois_monoid(&extension(2, 1, 3).unwrap(), &BuildOptions::default()).unwrap();
        assert!(verify_clifford(&m, DEFAULT_EXHAUSTIVE_BOUND, DEFAULT_SAMPLES, 0).unwrap().passed);
    }

    #[test]
    fn sampled_mode() {
        let m = build_galois_monoid(&extension(2, 1, 4).unwrap(), &BuildOptions::default()).unwrap();
        let r = verify_clifford(&m, 0, 500, 7).unwrap();
        assert!(r.passed);
        assert_eq!(r.mode, SamplingMode::Sampled { seed: 7, triples: 500 });
    }
}
