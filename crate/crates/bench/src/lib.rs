//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use brauer_core::algebra::{FiniteGroup, Modification};
use brauer_core::cohomology::ZeroModule;
use brauer_core::fields::{extension, galois_module, ExtensionDescriptor};
use brauer_core::linalg::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n).expect("positive order"))
}

/// `F_{p^n}/F_p`.
pub fn prime_extension(p: u64, n: u32) -> ExtensionDescriptor {
    extension(p, 1, n).expect("valid extension")
}

/// `L^×` over the full modification of the Galois group.
pub fn full_galois_module(e: &ExtensionDescriptor) -> ZeroModule {
    galois_module(e).and_then(|g| g.full_module()).expect("valid module")
}

/// `L^×` over the modification erasing every product except `1·1`.
pub fn sparse_galois_module(e: &ExtensionDescriptor) -> ZeroModule {
    let spec = galois_module(e).expect("valid module");
    let n = spec.group.order();
    let pairs = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).filter(|&(x, y)| (x, y) != (1, 1) || n <= 2);
    let s = Modification::from_zero_set(spec.group.clone(), pairs).expect("associative");
    spec.module_over(&s).expect("valid module")
}

/// Seeded `rows x cols` matrix with entries in `[-20, 20]`.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-20..=20)).collect()).collect();
    let refs: Vec<&[i64]> = data.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}
