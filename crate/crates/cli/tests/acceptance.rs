//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any fail.

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use brauer_core::algebra::{
    enumerate_modifications, enumerate_modifications_naive, naive_candidate_count, FiniteGroup, Modification,
};
use brauer_core::cohomology::{
    brute_force_cohomology, coboundary_matrix, cochain_moduli, cohomology, domain, element_order_multiset,
    ActionMatrix, ZeroModule,
};
use brauer_core::fields::{crosscheck_frobenius, extension, galois_module, is_prime, ExtensionDescriptor};
use brauer_core::linalg::{hnf, snf, IntMatrix, PresentedAbelianGroup};
use brauer_core::monoid::{build_galois_monoid, verify_clifford, BuildOptions, SamplingMode, DEFAULT_SAMPLES};
use brauer_core::verify::{verify_extension, VerificationReport, Verdict};
use brauer_core::{Error, Result as CoreResult};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n).unwrap())
}

// ---------------------------------------------------------------- fixtures

type Family = Box<dyn Fn(&Modification) -> CoreResult<ZeroModule> + Sync + Send>;

fn matrix_action(s: &Modification, orders: Vec<u64>, generator: ActionMatrix) -> CoreResult<ZeroModule> {
    let r = orders.len();
    let mut acc: ActionMatrix = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut action = Vec::new();
    for _ in 0..s.order() {
        action.push(acc.clone());
        acc = (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| acc[i][k] * generator[k][j]).sum::<u64>() % orders[i]).collect())
            .collect();
    }
    ZeroModule::new(s.clone(), orders, action)
}

/// Six modules over the modifications of `C_d`.
fn module_family(d: usize) -> Vec<(&'static str, Family)> {
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

/// Every extension `F_{p^n}/F_{p^m}` with `p^n <= bound`.
fn extensions(bound: u64) -> Vec<ExtensionDescriptor> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| is_prime(p)) {
        let mut n = 1;
        while p.pow(n) <= bound {
            for m in (1..=n).filter(|m| n % m == 0) {
                out.push(extension(p, m, n).unwrap());
            }
            n += 1;
        }
    }
    out
}

fn theorem_cases() -> Vec<ExtensionDescriptor> {
    let mut cases: Vec<ExtensionDescriptor> = [2, 3]
        .into_iter()
        .flat_map(|p| (2..=4).map(move |n| extension(p, 1, n).unwrap()))
        .collect();
    cases.push(extension(2, 1, 6).unwrap());
    cases
}

// ---------------------------------------------------------------- criteria

fn modification_counts() -> Check {
    let expected = [(1, 1), (2, 2), (3, 4), (4, 14), (6, 284)];
    let mut details = Vec::new();
    for (n, count) in expected {
        let g = cyclic(n);
        let pruned = enumerate_modifications(&g).map_err(|e| e.to_string())?;
        let naive = enumerate_modifications_naive(&g, 8).map_err(|e| e.to_string())?;
        ensure(pruned == naive, || format!("C{n}: pruned search and naive oracle disagree"))?;
        ensure(pruned.len() == count, || format!("C{n}: {} modifications, expected {count}", pruned.len()))?;
        details.push(format!("C{n}={count} ({} candidates)", naive_candidate_count(&g)));
    }
    Ok(details.join(", "))
}

fn to_i64(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("small entry")).collect())
        .collect()
}

/// `∂^{n+1} ∂^n ≡ 0` modulo the coefficient orders.
fn square_vanishes(module: &ZeroModule, n: usize) -> bool {
    let a = to_i64(&coboundary_matrix(module, n + 1));
    let b = to_i64(&coboundary_matrix(module, n));
    let moduli: Vec<i64> = cochain_moduli(&domain(module.semigroup(), n + 2), module.orders())
        .iter()
        .map(|m| m.to_i64().unwrap())
        .collect();
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter().zip(&moduli).all(|(row, m)| {
        (0..cols).all(|j| {
            let v: i128 = (0..inner).map(|k| row[k] as i128 * b[k][j] as i128).sum();
            v.rem_euclid(*m as i128) == 0
        })
    })
}

fn complex_validity() -> Check {
    let mut checked = 0usize;
    for d in [2, 3, 4, 6] {
        let mods = enumerate_modifications(&cyclic(d)).map_err(|e| e.to_string())?;
        for (name, family) in module_family(d) {
            let failures: Vec<String> = mods
                .par_iter()
                .flat_map_iter(|s| {
                    let module = family(s).unwrap();
                    (0..=2)
                        .filter(move |&n| !square_vanishes(&module, n))
                        .map(move |n| format!("C{d} {name} {:?} n={n}", s.zero_pairs()))
                })
                .collect();
            ensure(failures.is_empty(), || failures.join("; "))?;
            checked += mods.len() * 3;
        }
    }
    Ok(format!("{checked} composites vanish, 6 modules per group"))
}

const ORACLE_BUDGET: u64 = 100_000;

fn oracle_agrees(module: &ZeroModule, n: usize) -> std::result::Result<Option<()>, String> {
    let brute = match brute_force_cohomology(module, n, ORACLE_BUDGET) {
        Ok(b) => b,
        Err(Error::BudgetExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };
    let slice = cohomology(module, n).map_err(|e| e.to_string())?;
    ensure(
        slice.order() == BigInt::from(brute.order)
            && element_order_multiset(slice.invariant_factors()) == brute.element_orders,
        || format!("{:?} n={n}: lattice {:?}, brute force {:?}", module.semigroup().zero_pairs(), slice.invariant_factors(), brute),
    )?;
    Ok(Some(()))
}

fn oracle_equivalence() -> Check {
    let g = cyclic(2);
    for s in [Modification::full(g.clone()), Modification::annihilator(g.clone())] {
        let m = ZeroModule::cyclic_power_action(s.clone(), 3, 2).unwrap();
        ensure(cohomology(&m, 2).unwrap().is_trivial(), || format!("H^2_0 of {:?} with Z/3 x2 is not 0", s.zero_pairs()))?;
        oracle_agrees(&m, 2)?;
    }
    let z2 = ZeroModule::trivial_action(Modification::full(g), vec![2]).unwrap();
    ensure(cohomology(&z2, 2).unwrap().invariant_factors() == [BigInt::from(2)], || "H^2(C2, Z/2) is not Z/2".into())?;
    oracle_agrees(&z2, 2)?;

    let mut compared = 0usize;
    let mut skipped = 0usize;
    for d in [1, 2, 3, 4, 6] {
        let mods = enumerate_modifications(&cyclic(d)).map_err(|e| e.to_string())?;
        for (_, family) in module_family(d) {
            let results: Vec<std::result::Result<Option<()>, String>> = mods
                .par_iter()
                .flat_map_iter(|s| {
                    let module = family(s).unwrap();
                    (0..=2).map(move |n| oracle_agrees(&module, n))
                })
                .collect();
            for r in results {
                match r? {
                    Some(()) => compared += 1,
                    None => skipped += 1,
                }
            }
        }
    }
    Ok(format!("{compared} cases agree, {skipped} over the 1e5 budget"))
}

fn adjoined_zero_bridge() -> Check {
    let mut brute = 0;
    for d in 1..=6usize {
        for m in 1..=6u64 {
            let module = ZeroModule::trivial_action(Modification::full(cyclic(d)), vec![m]).unwrap();
            let slice = cohomology(&module, 2).map_err(|e| e.to_string())?;
            let g = num_integer::gcd(d as u64, m);
            let expected: Vec<BigInt> = if g == 1 { vec![] } else { vec![BigInt::from(g)] };
            ensure(slice.invariant_factors() == expected, || {
                format!("C{d}, Z/{m}: {:?} instead of Z/{g}", slice.invariant_factors())
            })?;
            if oracle_agrees(&module, 2)?.is_some() {
                brute += 1;
            }
        }
    }
    Ok(format!("36 cases, {brute} also by brute force"))
}

fn hilbert_90() -> Check {
    let cases = extensions(1024);
    let results: Vec<std::result::Result<usize, String>> = cases
        .par_iter()
        .map(|e| {
            let d = e.degree() as usize;
            let full = galois_module(e).and_then(|g| g.full_module()).map_err(|x| x.to_string())?;
            let mut count = 0;
            for u in (1..=d).filter(|u| d.is_multiple_of(*u)) {
                let elements: Vec<usize> = (0..u).map(|k| k * (d / u)).collect();
                let (sub, _) = full.restrict_to_subgroup(&elements).map_err(|x| x.to_string())?;
                for n in [1, 2] {
                    let h = cohomology(&sub, n).map_err(|x| x.to_string())?;
                    ensure(h.is_trivial(), || format!("{e}, |U|={u}: H^{n} = {:?}", h.invariant_factors()))?;
                }
                count += 1;
            }
            Ok(count)
        })
        .collect();
    let mut subgroups = 0;
    for r in results {
        subgroups += r?;
    }
    Ok(format!("{} extensions, {subgroups} subgroups", cases.len()))
}

fn theorem_reports() -> std::result::Result<Vec<VerificationReport>, String> {
    theorem_cases()
        .iter()
        .map(|e| verify_extension(e, 8).map_err(|x| format!("{e}: {x}")))
        .collect()
}

fn exactness(reports: &[VerificationReport]) -> Check {
    let mut total = 0;
    for rep in reports {
        for r in &rep.reports {
            ensure(r.verdict == Verdict::Pass && r.psi_injective && r.image_psi_equals_kernel_phi, || {
                format!("{} #{} {:?}: {:?}", rep.extension, r.modification_id, r.zero_pairs, r.verdict)
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} modifications over {} extensions", reports.len()))
}

fn corollary(reports: &[VerificationReport]) -> Check {
    let mut total = 0;
    for rep in reports {
        for c in &rep.corollary {
            ensure(c.passed && c.factors_equal && c.psi_isomorphism, || {
                format!(
                    "{} #{}: {:?} vs {:?}",
                    rep.extension, c.modification_id, c.component_invariants, c.quotient_component_invariants
                )
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} components match their quotients"))
}

fn round_trips(reports: &[VerificationReport]) -> Check {
    let mut total = 0;
    for rep in reports {
        for r in &rep.reports {
            let c = r
                .constructive
                .as_ref()
                .ok_or_else(|| format!("{} #{}: constructive checks not run", rep.extension, r.modification_id))?;
            ensure(c.descend_then_lift && c.lift_then_descend && c.psi_paths_agree && c.transversal_independent, || {
                format!("{} #{}: {c:?}", rep.extension, r.modification_id)
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} modifications, both round trips and both ψ paths agree"))
}

fn clifford() -> Check {
    let mut details = Vec::new();
    for (spec, exhaustive) in [("2:4", true), ("3:9", true), ("2:8", true), ("3:27", true), ("2:16", false), ("2:64", false)] {
        let e: ExtensionDescriptor = spec.parse().unwrap();
        let m = build_galois_monoid(&e, &BuildOptions::default()).map_err(|x| x.to_string())?;
        let bound = if exhaustive { u64::MAX } else { 0 };
        let r = verify_clifford(&m, bound, DEFAULT_SAMPLES, 0xB2A0).map_err(|x| x.to_string())?;
        ensure(r.passed, || format!("{e}: {r:?}"))?;
        match (&r.mode, exhaustive) {
            (SamplingMode::Exhaustive { elements }, true) => details.push(format!("{e} all {elements}^3 triples")),
            (SamplingMode::Sampled { triples, .. }, false) if *triples >= 10_000 => {
                details.push(format!("{e} {triples} sampled triples"))
            }
            _ => return Err(format!("{e}: unexpected mode {:?}", r.mode)),
        }
    }
    Ok(details.join(", "))
}

fn unimodular(m: &IntMatrix) -> bool {
    m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
}

fn check_snf(m: &IntMatrix) -> std::result::Result<(), String> {
    let sd = snf(m);
    ensure(unimodular(&sd.left) && unimodular(&sd.right), || "transform not unimodular".into())?;
    ensure(sd.right.mul(&sd.right_inverse).unwrap() == IntMatrix::identity(m.cols()), || "bad right inverse".into())?;
    let d = sd.left.mul(m).unwrap().mul(&sd.right).unwrap();
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            let want = if i == j { sd.diag[i].clone() } else { BigInt::zero() };
            ensure(d[(i, j)] == want, || format!("left*M*right differs at ({i},{j})"))?;
        }
    }
    for w in sd.diag.windows(2) {
        let ok = !w[0].is_negative() && if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        ensure(ok, || format!("diagonal {:?} violates divisibility", sd.diag))?;
    }
    ensure(snf(&IntMatrix::diagonal(&sd.diag)).diag == sd.diag, || "SNF not idempotent".into())
}

fn check_hnf(m: &IntMatrix) -> std::result::Result<(), String> {
    let h = hnf(m);
    ensure(hnf(&h) == h, || "HNF not idempotent".into())?;
    let mut last: Option<usize> = None;
    for i in 0..h.rows() {
        let Some(c) = h.row(i).iter().position(|x| !x.is_zero()) else { break };
        ensure(h[(i, c)].is_positive() && last.is_none_or(|p| c > p), || "not in echelon form".into())?;
        for k in 0..i {
            ensure(!h[(k, c)].is_negative() && h[(k, c)] < h[(i, c)], || "entries above pivot not reduced".into())?;
        }
        last = Some(c);
    }
    let same_lattice = hnf(&h.vstack(m).unwrap()).row_vecs()[..h.rows()] == h.row_vecs()[..]
        && hnf(&m.vstack(&h).unwrap()).row_vecs()[..m.rows()] == h.row_vecs()[..];
    ensure(same_lattice, || "row lattice changed".into())
}

/// Element orders of `(Z/m_1 + ... + Z/m_r) / <extra>`, by listing elements.
fn brute_force_orders(moduli: &[i64], extra: &[Vec<i64>]) -> BTreeMap<u64, u64> {
    let reduce = |v: &[i64]| -> Vec<i64> { v.iter().zip(moduli).map(|(x, m)| x.rem_euclid(*m)).collect() };
    let mut all = vec![vec![]];
    for &m in moduli {
        all = all
            .into_iter()
            .flat_map(|v: Vec<i64>| (0..m).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    let mut sub: HashSet<Vec<i64>> = HashSet::from([vec![0; moduli.len()]]);
    loop {
        let mut grown = sub.clone();
        for h in &sub {
            for g in extra {
                grown.insert(reduce(&h.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>()));
            }
        }
        if grown.len() == sub.len() {
            break;
        }
        sub = grown;
    }
    let mut counts = BTreeMap::new();
    for x in &all {
        let k = (1i64..).find(|k| sub.contains(&reduce(&x.iter().map(|v| v * k).collect::<Vec<_>>()))).unwrap();
        *counts.entry(k as u64).or_insert(0u64) += 1;
    }
    let h = sub.len() as u64;
    counts.into_iter().map(|(k, c)| (k, c / h)).collect()
}

fn exact_linear_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    for t in 0..500 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = IntMatrix::from_i64(&refs);
        check_snf(&m).map_err(|e| format!("matrix {t}: {e}"))?;
        check_hnf(&m).map_err(|e| format!("matrix {t}: {e}"))?;
    }
    let mut groups = 0;
    while groups < 200 {
        let r = rng.gen_range(1..=3);
        let moduli: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=6)).collect();
        let extra: Vec<Vec<i64>> = (0..rng.gen_range(0..=3))
            .map(|_| (0..r).map(|_| rng.gen_range(-20..=20)).collect())
            .collect();
        let brute = brute_force_orders(&moduli, &extra);
        let order: u64 = brute.values().sum();
        if order > 100 {
            continue;
        }
        let mut rows: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| if i == j { moduli[i] } else { 0 }).collect()).collect();
        rows.extend(extra.iter().cloned());
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let g = PresentedAbelianGroup::from_presentation(r, IntMatrix::from_i64(&refs)).map_err(|e| e.to_string())?;
        ensure(g.order() == Some(BigInt::from(order)) && element_order_multiset(g.invariant_factors()) == brute, || {
            format!("moduli {moduli:?} extra {extra:?}: {:?} vs {brute:?}", g.invariant_factors())
        })?;
        groups += 1;
    }
    Ok("500 matrices for SNF and HNF, 200 presented groups against element listings".into())
}

fn concrete_fields() -> Check {
    let cases = extensions(256);
    for e in &cases {
        ensure(crosscheck_frobenius(e).map_err(|x| x.to_string())?, || format!("{e}: Frobenius mismatch"))?;
    }
    Ok(format!("{} extensions", cases.len()))
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_brauer");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().to_str().unwrap();
    for args in [&["monoid", "2:16"][..], &["verify", "2:16", "--format", "json"][..]] {
        let run = |extra: &[&str]| -> std::result::Result<Vec<u8>, String> {
            let o = Command::new(bin).args(args).args(extra).output().map_err(|e| e.to_string())?;
            ensure(o.status.success(), || format!("{args:?} exited with {:?}", o.status.code()))?;
            Ok(o.stdout)
        };
        let outputs = [run(&[])?, run(&[])?, run(&["--cache-dir", cache])?, run(&["--cache-dir", cache])?];
        ensure(outputs.iter().all(|o| *o == outputs[0]), || format!("{args:?}: outputs differ"))?;
        serde_json::from_slice::<serde_json::Value>(&outputs[0]).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok("monoid 2:16 and verify 2:16 identical fresh, cold cache and warm cache".into())
}

// ---------------------------------------------------------------- runner

fn run(number: usize, title: &str, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
        Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => {
            println!("[PASS] criterion {number:>2}: {title} ({detail}; {secs:.1}s)");
            true
        }
        Err(reason) => {
            println!("[FAIL] criterion {number:>2}: {title}: {reason} ({secs:.1}s)");
            false
        }
    }
}

#[allow(clippy::vec_init_then_push)]
fn main() {
    // `cargo test` passes harness flags; listing is the only one that matters.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let mut passed = Vec::new();
    passed.push(run(1, "modification counts agree with the naive oracle", modification_counts));
    passed.push(run(2, "coboundary squares to zero", complex_validity));
    passed.push(run(3, "lattice cohomology matches brute force", oracle_equivalence));
    passed.push(run(4, "adjoined zero gives group cohomology", adjoined_zero_bridge));
    passed.push(run(5, "Hilbert 90 and trivial Brauer groups for q <= 1024", hilbert_90));

    let start = Instant::now();
    let reports = theorem_reports();
    let secs = start.elapsed().as_secs_f64();
    let reports = &reports;
    let with_reports = |f: fn(&[VerificationReport]) -> Check| {
        move || -> Check {
            let r = reports.as_ref().map_err(Clone::clone)?;
            f(r)
        }
    };
    let theorem_title = format!("exact sequence on every modification, p in {{2,3}}, n in {{2,3,4}}, plus F64 (verification {secs:.1}s)");
    passed.push(run(6, &theorem_title, with_reports(exactness)));
    passed.push(run(7, "components equal their quotient components", with_reports(corollary)));
    passed.push(run(8, "descent and lift are mutually inverse", with_reports(round_trips)));
    passed.push(run(9, "Clifford semigroup laws", clifford));
    passed.push(run(10, "exact linear algebra", exact_linear_algebra));
    passed.push(run(11, "concrete field arithmetic matches the Frobenius model for q <= 256", concrete_fields));
    passed.push(run(12, "CLI output is deterministic with and without cache", determinism));

    let ok = passed.iter().filter(|&&p| p).count();
    println!("{ok}/{} acceptance criteria pass", passed.len());
    if ok != passed.len() {
        std::process::exit(1);
    }
}
