//! Enumeration of all modifications of a finite group.
//!
//! The pruned search decides erasable pairs in lexicographic order and checks
//! each associativity triple as soon as every pair it depends on is decided.
//! The naive search tries all `2^k` zero sets and serves as an oracle.

use std::sync::Arc;

use rayon::prelude::*;

use super::group::FiniteGroup;
use super::modification::Modification;
use crate::error::{Error, Result};

/// Default bound on the group order accepted by the enumerators.
pub const DEFAULT_MAX_ORDER: usize = 8;

/// Associativity constraint for one triple of non-identity elements:
/// `[e(x,y) or e(xy,z)] <=> [e(y,z) or e(x,yz)]`, each `e` an erasure flag.
/// `None` marks a pair that involves the identity and is never erased.
#[derive(Clone, Copy, Debug)]
struct Constraint {
    left: [Option<usize>; 2],
    right: [Option<usize>; 2],
}

impl Constraint {
    fn holds(&self, erased: impl Fn(usize) -> bool) -> bool {
        let side = |s: &[Option<usize>; 2]| s.iter().flatten().any(|&p| erased(p));
        side(&self.left) == side(&self.right)
    }

    fn max_pair(&self) -> Option<usize> {
        self.left.iter().chain(&self.right).flatten().copied().max()
    }
}

struct Problem {
    group: Arc<FiniteGroup>,
    /// Erasable pairs in lexicographic order.
    pairs: Vec<(usize, usize)>,
    constraints: Vec<Constraint>,
}

impl Problem {
    fn new(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
        let pair_index = |x: usize, y: usize| -> Option<usize> { (x != 0 && y != 0).then(|| (x - 1) * (n - 1) + (y - 1)) };
        let mut constraints = Vec::new();
        for x in 1..n {
            for y in 1..n {
                for z in 1..n {
                    let xy = group.mul(x, y);
                    let yz = group.mul(y, z);
                    let c = Constraint {
                        left: [pair_index(x, y), pair_index(xy, z)],
                        right: [pair_index(y, z), pair_index(x, yz)],
                    };
                    if c.max_pair().is_some() {
                        constraints.push(c);
                    }
                }
            }
        }
        Problem {
            group,
            pairs,
            constraints,
        }
    }

    fn build(&self, erased: &[bool]) -> Result<Modification> {
        let pairs = self.pairs.iter().zip(erased).filter(|(_, &e)| e).map(|(&p, _)| p);
        Modification::from_zero_set(self.group.clone(), pairs)
    }
}

fn check_bound(group: &FiniteGroup, bound: usize) -> Result<()> {
    if group.order() > bound {
        return Err(Error::GroupTooLarge {
            order: group.order(),
            bound,
        });
    }
    Ok(())
}

/// Canonical order: by number of erased pairs, then lexicographically.
pub fn sort_canonical(mods: &mut [Modification]) {
    mods.sort_by(|a, b| {
        a.zero_pairs()
            .len()
            .cmp(&b.zero_pairs().len())
            .then_with(|| a.zero_pairs().cmp(b.zero_pairs()))
    });
}

/// All modifications of `group`, in canonical order.
pub fn enumerate_modifications(group: &Arc<FiniteGroup>) -> Result<Vec<Modification>> {
    enumerate_modifications_bounded(group, DEFAULT_MAX_ORDER)
}

pub fn enumerate_modifications_bounded(group: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Modification>> {
    check_bound(group, bound)?;
    let problem = Problem::new(group.clone());
    let k = problem.pairs.len();
    // Constraints bucketed by the last pair they depend on.
    let mut buckets: Vec<Vec<Constraint>> = vec![Vec::new(); k];
    for c in &problem.constraints {
        buckets[c.max_pair().expect("filtered")].push(*c);
    }
    let mut erased = vec![false; k];
    let mut out = Vec::new();
    dfs(0, &mut erased, &buckets, &problem, &mut out)?;
    sort_canonical(&mut out);
    Ok(out)
}

fn dfs(
    depth: usize,
    erased: &mut Vec<bool>,
    buckets: &[Vec<Constraint>],
    problem: &Problem,
    out: &mut Vec<Modification>,
) -> Result<()> {
    if depth == erased.len() {
        out.push(problem.build(erased)?);
        return Ok(());
    }
    for choice in [false, true] {
        erased[depth] = choice;
        if buckets[depth].iter().all(|c| c.holds(|p| erased[p])) {
            dfs(depth + 1, erased, buckets, problem, out)?;
        }
    }
    erased[depth] = false;
    Ok(())
}

/// Number of candidate zero sets the naive oracle visits.
pub fn naive_candidate_count(group: &FiniteGroup) -> u64 {
    let k = (group.order() - 1) * (group.order() - 1);
    1u64 << k
}

/// Exhaustive `2^k` oracle. Only the count and the list are produced;
/// callers compare against [`enumerate_modifications`].
pub fn enumerate_modifications_naive(group: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<Modification>> {
    check_bound(group, bound)?;
    let problem = Problem::new(group.clone());
    let k = problem.pairs.len();
    assert!(k < 40, "naive enumeration over 2^{k} zero sets is out of reach");
    let total: u64 = 1 << k;
    let n = group.order();
    let table = group.table();
    // Direct evaluation of (xy)z and x(yz) on G ∪ {0}; deliberately not
    // sharing the constraint encoding used by the pruned search.
    let associative = |mask: u64| {
        let star = |x: Option<usize>, y: Option<usize>| -> Option<usize> {
            let (x, y) = (x?, y?);
            if x != 0 && y != 0 && mask >> ((x - 1) * (n - 1) + (y - 1)) & 1 == 1 {
                None
            } else {
                Some(table[x][y])
            }
        };
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = star(Some(x), Some(y));
                (0..n).all(|z| star(xy, Some(z)) == star(Some(x), star(Some(y), Some(z))))
            })
        })
    };
    let valid: Vec<u64> = (0..total).into_par_iter().filter(|&mask| associative(mask)).collect();
    let mut out = valid
        .into_iter()
        .map(|mask| {
            let erased: Vec<bool> = (0..k).map(|p| mask >> p & 1 == 1).collect();
            problem.build(&erased)
        })
        .collect::<Result<Vec<_>>>()?;
    sort_canonical(&mut out);
    Ok(out)
}
