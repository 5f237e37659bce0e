mod common;

use brauer_core::algebra::{enumerate_modifications, Modification};
use brauer_core::cohomology::{brute_force_cohomology, cohomology, element_order_multiset, ZeroModule};
use brauer_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;

use common::{cyclic, module_family};

const BUDGET: u64 = 100_000;

fn agrees(module: &ZeroModule, n: usize) -> Option<bool> {
    let brute = match brute_force_cohomology(module, n, BUDGET) {
        Ok(b) => b,
        Err(Error::BudgetExceeded { .. }) => return None,
        Err(e) => panic!("{e}"),
    };
    let slice = cohomology(module, n).unwrap();
    Some(
        slice.order() == BigInt::from(brute.order)
            && element_order_multiset(slice.invariant_factors()) == brute.element_orders,
    )
}

#[test]
fn lattice_matches_brute_force() {
    let mut compared = 0;
    for d in 1..=4 {
        let mods = enumerate_modifications(&cyclic(d)).unwrap();
        for (name, family) in module_family(d) {
            for s in &mods {
                let module = family(s).unwrap();
                for n in 0..=2 {
                    if let Some(ok) = agrees(&module, n) {
                        assert!(ok, "C{d} {name} {:?} n={n}", s.zero_pairs());
                        compared += 1;
                    }
                }
            }
        }
    }
    assert!(compared > 200, "only {compared} comparisons fit the budget");
}

#[test]
fn named_examples() {
    let g = cyclic(2);
    let times_two = |s: Modification| ZeroModule::cyclic_power_action(s, 3, 2).unwrap();
    for s in [Modification::full(g.clone()), Modification::annihilator(g.clone())] {
        let slice = cohomology(&times_two(s), 2).unwrap();
        assert!(slice.is_trivial());
    }
    let z2 = ZeroModule::trivial_action(Modification::full(g), vec![2]).unwrap();
    let slice = cohomology(&z2, 2).unwrap();
    assert_eq!(slice.invariant_factors(), &[BigInt::from(2)]);
    assert_eq!(agrees(&z2, 2), Some(true));
}

#[test]
fn adjoined_zero_matches_group_cohomology() {
    for d in 1..=6usize {
        for m in 1..=6u64 {
            let g = cyclic(d);
            let module = ZeroModule::trivial_action(Modification::full(g), vec![m]).unwrap();
            let slice = cohomology(&module, 2).unwrap();
            let expected = d.gcd(&(m as usize));
            assert_eq!(slice.order(), BigInt::from(expected), "C{d} Z/{m}");
            assert!(slice.invariant_factors().len() <= 1);
            if let Some(ok) = agrees(&module, 2) {
                assert!(ok, "C{d} Z/{m}");
            }
        }
    }
}
