#![allow(dead_code)]

use std::sync::Arc;

use brauer_core::algebra::{FiniteGroup, Modification};
use brauer_core::cohomology::{ActionMatrix, ZeroModule};
use brauer_core::fields::{extension, galois_module};
use brauer_core::Result;

pub type Family = Box<dyn Fn(&Modification) -> Result<ZeroModule> + Sync + Send>;

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n).unwrap())
}

fn mat_mul(a: &ActionMatrix, b: &ActionMatrix, orders: &[u64]) -> ActionMatrix {
    let r = orders.len();
    (0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum::<u64>() % orders[i]).collect())
        .collect()
}

/// Module where element `k` of `C_d` acts by `generator^k`.
pub fn matrix_action(s: &Modification, orders: Vec<u64>, generator: ActionMatrix) -> Result<ZeroModule> {
    let r = orders.len();
    let mut acc: ActionMatrix = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut action = Vec::new();
    for _ in 0..s.order() {
        action.push(acc.clone());
        acc = mat_mul(&acc, &generator, &orders);
    }
    ZeroModule::new(s.clone(), orders, action)
}

/// Six modules over the modifications of `C_d`: three trivial, two Galois
/// multiplicative groups and a rank-2 permutation-like action.
pub fn module_family(d: usize) -> Vec<(&'static str, Family)> {
    let mut out: Vec<(&'static str, Family)> = vec![
        ("trivial Z/2", Box::new(|s: &Modification| ZeroModule::trivial_action(s.clone(), vec![2]))),
        ("trivial Z/6", Box::new(|s: &Modification| ZeroModule::trivial_action(s.clone(), vec![6]))),
        ("trivial Z/2+Z/4", Box::new(|s: &Modification| ZeroModule::trivial_action(s.clone(), vec![2, 4]))),
        (
            "F_{2^d}^×",
            Box::new(move |s: &Modification| galois_module(&extension(2, 1, d as u32)?)?.module_over(s)),
        ),
        (
            "F_{3^d}^×",
            Box::new(move |s: &Modification| galois_module(&extension(3, 1, d as u32)?)?.module_over(s)),
        ),
    ];
    let (name, orders, gen): (&'static str, Vec<u64>, ActionMatrix) = if d.is_multiple_of(2) {
        ("swap Z/3+Z/3", vec![3, 3], vec![vec![0, 1], vec![1, 0]])
    } else if d.is_multiple_of(3) {
        ("order-3 on Z/2+Z/2", vec![2, 2], vec![vec![0, 1], vec![1, 1]])
    } else {
        ("trivial Z/3+Z/3", vec![3, 3], vec![vec![1, 0], vec![0, 1]])
    };
    out.push((name, Box::new(move |s: &Modification| matrix_action(s, orders.clone(), gen.clone()))));
    out
}
