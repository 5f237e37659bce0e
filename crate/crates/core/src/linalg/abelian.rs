//! Finitely generated abelian groups given by generators and relations, and
//! homomorphisms between them. Elements are row vectors in generator
//! coordinates; a homomorphism acts as `x -> x * matrix`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::matrix::{mod_floor, IntMatrix};
use super::normal_form::{kernel_basis, snf, Echelon};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PresentedAbelianGroup {
    rank: usize,
    relations: IntMatrix,
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
    /// `rank x k`: generator coordinates to invariant coordinates.
    to_invariant: IntMatrix,
    /// `k x rank`: invariant coordinates back to generator coordinates.
    from_invariant: IntMatrix,
}

impl PresentedAbelianGroup {
    /// `Z^rank / rowspan(relations)`.
    pub fn from_presentation(rank: usize, relations: IntMatrix) -> Result<Self> {
        if relations.cols() != rank {
            return Err(Error::DimensionMismatch(format!(
                "relations have {} columns, rank is {rank}",
                relations.cols()
            )));
        }
        let sd = snf(&relations);
        let one = BigInt::one();
        // Coordinate i carries modulus diag[i] (0 past the diagonal: free).
        let moduli: Vec<BigInt> = (0..rank)
            .map(|i| sd.diag.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let kept: Vec<usize> = (0..rank).filter(|&i| moduli[i] != one).collect();
        let invariant_factors: Vec<BigInt> = kept
            .iter()
            .map(|&i| moduli[i].clone())
            .filter(|d| !d.is_zero())
            .collect();
        let free_rank = kept.len() - invariant_factors.len();
        let mut to_invariant = IntMatrix::zeros(rank, kept.len());
        let mut from_invariant = IntMatrix::zeros(kept.len(), rank);
        for (col, &i) in kept.iter().enumerate() {
            for r in 0..rank {
                to_invariant[(r, col)] = sd.right[(r, i)].clone();
                from_invariant[(col, r)] = sd.right_inverse[(i, r)].clone();
            }
        }
        Ok(PresentedAbelianGroup {
            rank,
            relations,
            invariant_factors,
            free_rank,
            to_invariant,
            from_invariant,
        })
    }

    /// `Z/d_1 + ... + Z/d_k` with the generators as invariant basis.
    pub fn diagonal(factors: &[BigInt]) -> Self {
        Self::from_presentation(factors.len(), IntMatrix::diagonal(factors))
            .expect("diagonal presentation is square")
    }

    pub fn trivial() -> Self {
        Self::diagonal(&[])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Torsion invariant factors `d_1 | d_2 | ...`, all at least 2.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Moduli of the invariant coordinates (0 for free coordinates).
    pub fn coordinate_moduli(&self) -> Vec<BigInt> {
        let mut m = self.invariant_factors.clone();
        m.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        m
    }

    /// Invariant coordinates of a generator-coordinate vector, reduced.
    pub fn to_invariant(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.to_invariant.left_apply(x);
        self.reduce_invariant(&y)
    }

    pub fn reduce_invariant(&self, y: &[BigInt]) -> Vec<BigInt> {
        y.iter()
            .zip(self.coordinate_moduli())
            .map(|(v, m)| if m.is_zero() { v.clone() } else { mod_floor(v, &m) })
            .collect()
    }

    /// A generator-coordinate vector representing the invariant coordinates `y`.
    pub fn from_invariant(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.from_invariant.left_apply(y)
    }

    /// Whether a generator-coordinate vector is zero in the group.
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.to_invariant(x).iter().all(Zero::is_zero)
    }

    /// Order of an element; `None` for elements of infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let y = self.to_invariant(x);
        let mut acc = BigInt::one();
        for (v, m) in y.iter().zip(self.coordinate_moduli()) {
            if v.is_zero() {
                continue;
            }
            if m.is_zero() {
                return None;
            }
            acc = acc.lcm(&(&m / v.gcd(&m)));
        }
        Some(acc)
    }

    /// All elements in invariant coordinates, when the group is finite and
    /// has at most `limit` elements.
    pub fn elements(&self, limit: u64) -> Option<Vec<Vec<BigInt>>> {
        let order = self.order()?.to_u64()?;
        if order > limit {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.invariant_factors {
            let d = d.to_u64()?;
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(v));
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            invariant_factors: self.invariant_factors.iter().map(|d| d.to_string()).collect(),
            free_rank: self.free_rank,
        }
    }
}

impl std::fmt::Display for PresentedAbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.free_rank));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serializable shape of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GroupSummary {
    pub invariant_factors: Vec<String>,
    pub free_rank: usize,
}

#[derive(Clone, Debug)]
pub struct AbelianHom {
    source: PresentedAbelianGroup,
    target: PresentedAbelianGroup,
    matrix: IntMatrix,
}

impl AbelianHom {
    /// Checks that every source relation maps into the target relation lattice.
    pub fn new(source: PresentedAbelianGroup, target: PresentedAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != source.rank() || matrix.cols() != target.rank() {
            return Err(Error::DimensionMismatch(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.rank(),
                target.rank()
            )));
        }
        let target_lattice = Echelon::exact(target.relations().row_vecs(), target.rank());
        for i in 0..source.relations().rows() {
            let image = matrix.left_apply(source.relations().row(i));
            if !target_lattice.contains(&image) {
                return Err(Error::IllDefined(i));
            }
        }
        Ok(AbelianHom { source, target, matrix })
    }

    pub fn identity(group: &PresentedAbelianGroup) -> Self {
        AbelianHom {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.rank()),
        }
    }

    pub fn source(&self) -> &PresentedAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &PresentedAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.left_apply(x)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &AbelianHom) -> Result<AbelianHom> {
        AbelianHom::new(self.source.clone(), other.target.clone(), self.matrix.mul(&other.matrix)?)
    }

    /// Same map on every source generator, judged in the target group.
    pub fn equals(&self, other: &AbelianHom) -> bool {
        if self.source.rank() != other.source.rank() || self.target.rank() != other.target.rank() {
            return false;
        }
        (0..self.source.rank()).all(|i| {
            let diff: Vec<BigInt> = self
                .matrix
                .row(i)
                .iter()
                .zip(other.matrix.row(i))
                .map(|(a, b)| a - b)
                .collect();
            self.target.is_zero_element(&diff)
        })
    }
}

#[derive(Clone, Debug)]
pub struct HomAnalysis {
    pub kernel: PresentedAbelianGroup,
    pub image: PresentedAbelianGroup,
    pub injective: bool,
    pub zero: bool,
    /// Generators of the kernel, as rows in source generator coordinates.
    pub kernel_generators: IntMatrix,
    /// Generators of the image, as rows in target generator coordinates.
    pub image_generators: IntMatrix,
}

/// Kernel and image of a homomorphism by lattice arithmetic.
pub fn hom_analysis(h: &AbelianHom) -> Result<HomAnalysis> {
    // Re-check well-definedness: callers may have built the hom by hand.
    let h = AbelianHom::new(h.source.clone(), h.target.clone(), h.matrix.clone())?;
    let a = h.source.rank();
    let b = h.target.rank();
    let rt = h.target.relations();

    // image = (rowspan(M) + R_t) / R_t
    let mut gens = h.matrix.row_vecs();
    gens.extend(rt.row_vecs());
    let image_lattice = Echelon::exact(gens, b);
    let image_rel: Vec<Vec<BigInt>> = (0..rt.rows())
        .map(|i| image_lattice.coordinates(rt.row(i)).expect("relations lie in the image lattice"))
        .collect();
    let image = PresentedAbelianGroup::from_presentation(
        image_lattice.rank(),
        IntMatrix::from_rows(image_lattice.rank(), image_rel)?,
    )?;

    // kernel = {x : x M in R_t} / R_s
    let stacked = h.matrix.vstack(rt)?;
    let null = kernel_basis(&stacked.transpose());
    let proj: Vec<Vec<BigInt>> = (0..null.rows()).map(|i| null.row(i)[..a].to_vec()).collect();
    let kernel_lattice = Echelon::exact(proj, a);
    let rs = h.source.relations();
    let kernel_rel: Vec<Vec<BigInt>> = (0..rs.rows())
        .map(|i| kernel_lattice.coordinates(rs.row(i)).expect("source relations lie in the kernel"))
        .collect();
    let kernel = PresentedAbelianGroup::from_presentation(
        kernel_lattice.rank(),
        IntMatrix::from_rows(kernel_lattice.rank(), kernel_rel)?,
    )?;

    Ok(HomAnalysis {
        injective: kernel.is_trivial(),
        zero: image.is_trivial(),
        kernel,
        image,
        kernel_generators: kernel_lattice.to_matrix(),
        image_generators: h.matrix.clone(),
    })
}

/// Whether two generator sets span the same subgroup of `ambient`.
pub fn subgroups_equal(gens_a: &IntMatrix, gens_b: &IntMatrix, ambient: &PresentedAbelianGroup) -> Result<bool> {
    let n = ambient.rank();
    if gens_a.cols() != n || gens_b.cols() != n {
        return Err(Error::DimensionMismatch("generators do not live in the ambient group".into()));
    }
    let span = |g: &IntMatrix| {
        let mut rows = g.row_vecs();
        rows.extend(ambient.relations().row_vecs());
        Echelon::exact(rows, n)
    };
    Ok(span(gens_a) == span(gens_b))
}

/// A subquotient `N / D` of `Z^c`, where `N` is a full-rank lattice
/// containing the lattice `D`. Both the cohomology groups `Z / B` and the
/// fixed submodules `A^U` are of this shape.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient_moduli: Vec<BigInt>,
    numerator: Echelon,
    group: PresentedAbelianGroup,
}

impl Subquotient {
    /// `denominator` must generate a sublattice of `numerator`; the ambient
    /// moduli are used only to reduce lifted representatives.
    pub fn new(numerator: Echelon, denominator: Vec<Vec<BigInt>>, ambient_moduli: Vec<BigInt>) -> Result<Self> {
        let k = numerator.rank();
        let rel: Vec<Vec<BigInt>> = denominator
            .iter()
            .map(|v| numerator.coordinates(v).ok_or(Error::NotInLattice))
            .collect::<Result<_>>()?;
        let group = PresentedAbelianGroup::from_presentation(k, IntMatrix::from_rows(k, rel)?)?;
        Ok(Subquotient {
            ambient_moduli,
            numerator,
            group,
        })
    }

    pub fn group(&self) -> &PresentedAbelianGroup {
        &self.group
    }

    pub fn numerator(&self) -> &Echelon {
        &self.numerator
    }

    /// Invariant coordinates of `v`; fails when `v` is outside the numerator.
    pub fn coords(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.numerator.coordinates(v).ok_or(Error::NotInLattice)?;
        Ok(self.group.to_invariant(&c))
    }

    /// An ambient vector in the class with invariant coordinates `y`.
    pub fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        let c = self.group.from_invariant(y);
        let mut v = vec![BigInt::zero(); self.numerator.cols()];
        for (ci, row) in c.iter().zip(self.numerator.basis()) {
            if ci.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x += ci * r;
                }
            }
        }
        for (x, m) in v.iter_mut().zip(&self.ambient_moduli) {
            if !m.is_zero() {
                *x = mod_floor(x, m);
            }
        }
        v
    }

    /// Lift of the `i`-th invariant generator.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.group.invariant_factors().len() + self.group.free_rank()];
        y[i] = BigInt::one();
        self.lift(&y)
    }

    pub fn num_generators(&self) -> usize {
        self.group.invariant_factors().len() + self.group.free_rank()
    }
}
