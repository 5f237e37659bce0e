//! Hermite and Smith normal forms over the integers.
//!
//! The workhorse is [`Echelon`], a row-style Hermite basis of the lattice
//! spanned by a set of row vectors together with an optional diagonal
//! sublattice `m_0 e_0, ..., m_{c-1} e_{c-1}` (a column modulus of zero means
//! "no such generator"). When every column carries a modulus the lattice has
//! full rank and all entries stay reduced, so computations over `Z/m` never
//! blow up. With no moduli this is the ordinary integer HNF.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{mod_floor, IntMatrix};
use crate::error::{Error, Result};

/// Hermite basis: rows in echelon form with strictly increasing pivot
/// columns, positive pivots, entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn reduce_row(row: &mut [BigInt], moduli: &[BigInt]) {
    for (x, m) in row.iter_mut().zip(moduli) {
        if !m.is_zero() {
            *x = mod_floor(x, m);
        }
    }
}

impl Echelon {
    /// Hermite basis of `span(rows) + sum_j moduli[j] * Z e_j`.
    pub fn with_moduli(rows: Vec<Vec<BigInt>>, moduli: &[BigInt]) -> Echelon {
        let cols = moduli.len();
        let mut active: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|mut r| {
                assert_eq!(r.len(), cols, "row width must match the number of moduli");
                reduce_row(&mut r, moduli);
                r
            })
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        let mut pivots = Vec::new();

        for j in 0..cols {
            let mut pivot: Option<Vec<BigInt>> = None;
            let mut rest = Vec::with_capacity(active.len());
            for mut r in active.drain(..) {
                if r[j].is_zero() {
                    rest.push(r);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(r),
                    Some(mut p) => {
                        let (g, s, t) = egcd(&p[j], &r[j]);
                        let pj = &p[j] / &g;
                        let rj = &r[j] / &g;
                        // [s t; rj -pj] has determinant -1.
                        let mut other: Vec<BigInt> = Vec::with_capacity(cols);
                        for k in 0..cols {
                            let new_p = &s * &p[k] + &t * &r[k];
                            other.push(&rj * &p[k] - &pj * &r[k]);
                            r[k] = new_p;
                        }
                        std::mem::swap(&mut p, &mut r);
                        drop(r);
                        reduce_row(&mut p, moduli);
                        reduce_row(&mut other, moduli);
                        if other.iter().any(|x| !x.is_zero()) {
                            rest.push(other);
                        }
                        pivot = Some(p);
                    }
                }
            }
            active = rest;
            let m = &moduli[j];
            if !m.is_zero() {
                match pivot.take() {
                    None => {
                        let mut e = vec![BigInt::zero(); cols];
                        e[j] = m.clone();
                        pivot = Some(e);
                    }
                    Some(mut p) => {
                        // Combine with the implicit generator m e_j. The
                        // second row (m/g) p has a zero in column j and must
                        // stay in play even when p[j] already divides m.
                        let (g, s, _t) = egcd(&p[j], m);
                        let factor = m / &g;
                        let mut other: Vec<BigInt> = p.iter().map(|x| x * &factor).collect();
                        other[j] = BigInt::zero();
                        if g != p[j] {
                            for (k, x) in p.iter_mut().enumerate() {
                                if k != j {
                                    *x *= &s;
                                }
                            }
                            p[j] = g;
                            reduce_row(&mut p, moduli);
                        }
                        reduce_row(&mut other, moduli);
                        if other.iter().any(|x| !x.is_zero()) {
                            active.push(other);
                        }
                        pivot = Some(p);
                    }
                }
            }
            if let Some(mut p) = pivot {
                if p[j].is_negative() {
                    for x in p.iter_mut() {
                        *x = -&*x;
                    }
                    reduce_row(&mut p, moduli);
                }
                basis.push(p);
                pivots.push(j);
            }
        }

        // Reduce above pivots, left to right.
        for i in 0..basis.len() {
            let c = pivots[i];
            let (upper, lower) = basis.split_at_mut(i);
            let prow = &lower[0];
            let pv = &prow[c];
            for row in upper.iter_mut() {
                let q = row[c].div_floor(pv);
                if !q.is_zero() {
                    for k in c..cols {
                        if !prow[k].is_zero() {
                            row[k] -= &q * &prow[k];
                        }
                    }
                }
            }
        }
        Echelon {
            cols,
            rows: basis,
            pivots,
        }
    }

    /// Plain integer Hermite basis of the row lattice.
    pub fn exact(rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
        Self::with_moduli(rows, &vec![BigInt::zero(); cols])
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.cols, self.rows.clone()).expect("echelon rows have uniform width")
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.cols);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        let mut next_col = 0;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if rem[next_col..c].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rem[c].div_rem(&row[c]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for k in c..self.cols {
                    if !row[k].is_zero() {
                        rem[k] -= &q * &row[k];
                    }
                }
            }
            coords.push(q);
            next_col = c + 1;
        }
        if rem[next_col..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Reduces `v` modulo the lattice: entries at pivot columns land in `[0, pivot)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = out[c].div_floor(&row[c]);
            if !q.is_zero() {
                for k in c..self.cols {
                    if !row[k].is_zero() {
                        out[k] -= &q * &row[k];
                    }
                }
            }
        }
        out
    }

    /// Index of the lattice in `Z^cols` (product of pivots); `None` when not full rank.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() < self.cols {
            return None;
        }
        Some(self.rows.iter().zip(&self.pivots).map(|(r, &c)| r[c].clone()).product())
    }
}

/// Row-style Hermite normal form, padded with zero rows to the input shape.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let e = Echelon::exact(m.row_vecs(), m.cols());
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for (i, row) in e.basis().iter().enumerate() {
        out.row_mut(i).clone_from_slice(row);
    }
    out
}

/// Result of a Smith decomposition `left * M * right = diag`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
    /// Inverse of `right`, tracked alongside it.
    pub right_inverse: IntMatrix,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

struct SmithWork {
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    right_inv: Vec<Vec<BigInt>>,
}

impl SmithWork {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.right.iter_mut()) {
            r.swap(i, j);
        }
        self.right_inv.swap(i, j);
    }

    /// row_i += k * row_j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.left] {
            let (src, dst) = if i < j {
                let (lo, hi) = m.split_at_mut(j);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[j], &mut hi[0])
            };
            for (d, s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d += k * s;
                }
            }
        }
    }

    /// col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.right] {
            for r in m.iter_mut() {
                if !r[j].is_zero() {
                    let v = k * &r[j];
                    r[i] += v;
                }
            }
        }
        // right_inv: row_j -= k * row_i
        let neg = -k;
        let (src, dst) = if j < i {
            let (lo, hi) = self.right_inv.split_at_mut(i);
            (&hi[0], &mut lo[j])
        } else {
            let (lo, hi) = self.right_inv.split_at_mut(j);
            (&lo[i], &mut hi[0])
        };
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d += &neg * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.left[i].iter_mut()) {
            *x = -&*x;
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form with unimodular transforms.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (nr, nc) = (m.rows(), m.cols());
    let mut w = SmithWork {
        a: m.row_vecs(),
        left: identity_rows(nr),
        right: identity_rows(nc),
        right_inv: identity_rows(nc),
    };
    let dim = nr.min(nc);
    for k in 0..dim {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in k..nr {
                for j in k..nc {
                    let x = &w.a[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(w, nr, nc, dim);
            };
            if pi != k {
                w.swap_rows(k, pi);
            }
            if pj != k {
                w.swap_cols(k, pj);
            }
            let mut dirty = false;
            for i in k + 1..nr {
                if w.a[i][k].is_zero() {
                    continue;
                }
                let q = w.a[i][k].div_floor(&w.a[k][k]);
                w.add_row(i, k, &-q);
                dirty |= !w.a[i][k].is_zero();
            }
            for j in k + 1..nc {
                if w.a[k][j].is_zero() {
                    continue;
                }
                let q = w.a[k][j].div_floor(&w.a[k][k]);
                w.add_col(j, k, &-q);
                dirty |= !w.a[k][j].is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility: pull an offending row into row k and retry.
            let p = w.a[k][k].clone();
            let offender = (k + 1..nr).find(|&i| (k + 1..nc).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => w.add_row(k, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[k][k].is_negative() {
            w.negate_row(k);
        }
    }
    finish(w, nr, nc, dim)
}

fn finish(w: SmithWork, nr: usize, nc: usize, dim: usize) -> SmithDecomposition {
    let diag = (0..dim).map(|i| w.a[i][i].abs()).collect();
    let mut w = w;
    for i in 0..dim {
        if w.a[i][i].is_negative() {
            w.negate_row(i);
        }
    }
    SmithDecomposition {
        left: IntMatrix::from_rows(nr, w.left).unwrap(),
        diag,
        right: IntMatrix::from_rows(nc, w.right).unwrap(),
        right_inverse: IntMatrix::from_rows(nc, w.right_inv).unwrap(),
    }
}

/// Basis (as rows) of `{x in Z^c : a x = 0 mod row_moduli}` plus
/// `col_moduli`-multiples of unit vectors. A zero modulus means exact.
///
/// The column moduli are only meaningful when `a` is well defined on them,
/// i.e. `col_moduli[j] * a[i][j] = 0 mod row_moduli[i]`; callers guarantee that.
pub fn kernel_lattice(a: &IntMatrix, row_moduli: &[BigInt], col_moduli: &[BigInt]) -> Echelon {
    let (r, c) = (a.rows(), a.cols());
    assert_eq!(row_moduli.len(), r);
    assert_eq!(col_moduli.len(), c);
    let mut moduli: Vec<BigInt> = row_moduli.to_vec();
    moduli.extend(col_moduli.iter().cloned());
    let rows = (0..c)
        .map(|j| {
            let mut row: Vec<BigInt> = a.column(j);
            row.extend((0..c).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let e = Echelon::with_moduli(rows, &moduli);
    let kernel_rows = e
        .basis()
        .iter()
        .zip(e.pivots())
        .filter(|(_, &p)| p >= r)
        .map(|(row, _)| row[r..].to_vec())
        .collect();
    Echelon::with_moduli(kernel_rows, col_moduli)
}

/// Basis of the integer kernel `{x : M x = 0}`, as rows.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let zr = vec![BigInt::zero(); m.rows()];
    let zc = vec![BigInt::zero(); m.cols()];
    kernel_lattice(m, &zr, &zc).to_matrix()
}

/// A solution of `a x = b (mod moduli)`, or `None`. Without moduli the system
/// is solved exactly over the integers. The returned solution is reduced
/// modulo the solution lattice, so it is canonical.
pub fn solve(a: &IntMatrix, b: &[BigInt], moduli: Option<&[BigInt]>) -> Result<Option<Vec<BigInt>>> {
    let (r, c) = (a.rows(), a.cols());
    if b.len() != r {
        return Err(Error::DimensionMismatch(format!("matrix has {r} rows, rhs has {}", b.len())));
    }
    let zero_moduli = vec![BigInt::zero(); r];
    let moduli = match moduli {
        Some(m) if m.len() != r => {
            return Err(Error::DimensionMismatch(format!("{} moduli for {r} rows", m.len())))
        }
        Some(m) => m,
        None => &zero_moduli,
    };
    // [a | diag(moduli)] (x, y) = b
    let mut aug = IntMatrix::zeros(r, c + r);
    for i in 0..r {
        for j in 0..c {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, c + i)] = moduli[i].clone();
    }
    let sd = snf(&aug);
    let lb = sd.left.apply(b);
    let mut z = vec![BigInt::zero(); c + r];
    for i in 0..r {
        let d = sd.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !lb[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, rem) = lb[i].div_rem(&d);
            if !rem.is_zero() {
                return Ok(None);
            }
            z[i] = q;
        }
    }
    let full = sd.right.apply(&z);
    let x = full[..c].to_vec();
    let kernel = kernel_lattice(a, moduli, &vec![BigInt::zero(); c]);
    Ok(Some(kernel.reduce(&x)))
}
