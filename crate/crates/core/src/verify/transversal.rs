use serde::Serialize;

use crate::algebra::{Modification, QuotientModification};

/// One representative per coset `Ut`, the identity representing `U`, and
/// the factorization `x = a t` of every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transversal {
    /// Representative of each coset, indexed like the quotient.
    pub reps: Vec<usize>,
    /// For each element `x`: its coset and the unit `a` with `x = a t`.
    pub coset_of: Vec<(usize, usize)>,
}

impl Transversal {
    /// Least element of each coset.
    pub fn least(s: &Modification, quotient: &QuotientModification) -> Self {
        Self::rotated(s, quotient, 0)
    }

    /// The `k`-th element (in index order, cyclically) of each coset other
    /// than `U`, which keeps the identity.
    pub fn rotated(s: &Modification, quotient: &QuotientModification, k: usize) -> Self {
        let g = s.group();
        let n = g.order();
        let cosets = quotient.coset_reps.len();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); cosets];
        for x in 0..n {
            members[quotient.projection[x]].push(x);
        }
        let reps: Vec<usize> = members
            .iter()
            .enumerate()
            .map(|(c, m)| if c == quotient.projection[0] { 0 } else { m[k % m.len()] })
            .collect();
        let coset_of = (0..n)
            .map(|x| {
                let c = quotient.projection[x];
                (c, g.mul(x, g.inverse(reps[c])))
            })
            .collect();
        Transversal { reps, coset_of }
    }

    pub fn rep(&self, coset: usize) -> usize {
        self.reps[coset]
    }

    /// `(t, a)` with `x = a t`.
    pub fn factor(&self, x: usize) -> (usize, usize) {
        let (c, a) = self.coset_of[x];
        (self.reps[c], a)
    }
}
