//! Descent of a cocycle in `ker φ` to `S/U` and the inverse lift.

use std::sync::Arc;

use num_bigint::BigInt;

use super::transversal::Transversal;
use crate::cohomology::{
    coboundary, coboundary_matrix, cochain_moduli, domain, normalize_two_cocycle, Cochain, UnitContext, ZeroModule,
};
use crate::error::{Error, Result};
use crate::linalg::{solve, IntMatrix};

/// The intermediate cocycles of a descent.
#[derive(Clone, Debug)]
pub struct Descent {
    /// `f` with `f|U×U = 0`.
    pub f_normalized: Cochain,
    /// `g = f - ∂λ`, satisfying `g(a, x) = g(x, a_x)`.
    pub g: Cochain,
    /// `h = g + ∂ρ`, vanishing when either argument is a unit.
    pub h: Cochain,
    /// `h̄` over `S/U` with coefficients in `A^U`.
    pub h_bar: Cochain,
}

fn fail(what: &'static str, witness: Vec<usize>) -> Error {
    Error::DescentAssertionFailed { what, witness }
}

fn value<'a>(c: &'a Cochain, t: &[usize]) -> Result<&'a [u64]> {
    c.at(t)
        .ok_or_else(|| Error::DimensionMismatch(format!("tuple {t:?} outside the domain")))
}

fn to_u64(v: &[BigInt], orders: &[u64]) -> Vec<u64> {
    v.iter()
        .zip(orders.iter().cycle())
        .map(|(x, &m)| {
            let r = crate::linalg::mod_floor(x, &BigInt::from(m));
            u64::try_from(r).expect("reduced value fits")
        })
        .collect()
}

/// Carries a 2-cocycle `f` with `[f] ∈ ker φ` to a 2-cocycle over `S/U`.
pub fn descend_cocycle(
    ctx: &UnitContext,
    module: &ZeroModule,
    transversal: &Transversal,
    f: &Cochain,
) -> Result<Descent> {
    let s = module.semigroup();
    let orders = module.orders();
    let d1 = Arc::new(domain(s, 1));
    let d2 = f.domain().clone();
    let d3 = Arc::new(domain(s, 3));
    if !coboundary(module, f, &d3)?.is_zero() {
        return Err(Error::NotACocycle);
    }
    let units = &ctx.split.units;

    // (1) f|U×U = ∂β on U; subtract ∂β with β extended by zero.
    let um = &ctx.units_module;
    let emb = &ctx.units_embedding;
    let du2 = Arc::new(domain(um.semigroup(), 2));
    let restricted = f.pull_back(du2.clone(), |t| t.iter().map(|&i| emb[i]).collect())?;
    let d1u = coboundary_matrix(um, 1);
    let beta_u = solve(&d1u, &restricted.to_big(), Some(&cochain_moduli(&du2, orders)))?
        .ok_or(Error::NotInKernelOfPhi)?;
    let beta_u = to_u64(&beta_u, orders);
    let r = module.rank();
    let mut beta = Cochain::zero(d1.clone(), orders);
    for (i, &x) in emb.iter().enumerate() {
        beta.set_at(&[x], &beta_u[i * r..(i + 1) * r])?;
    }
    let f1 = f.sub(&coboundary(module, &beta, &d2)?);
    for &a in units {
        for &b in units {
            if !module.is_zero(value(&f1, &[a, b])?) {
                return Err(fail("f vanishes on U x U", vec![a, b]));
            }
        }
    }

    // (2) π_x(a) = f(a,x) - f(x,a_x) is a 1-cocycle of U; solve (a-1)λ(x) = π_x(a).
    let mut lambda = Cochain::zero(d1.clone(), orders);
    for &x in &ctx.split.ideal {
        let mut pi = Vec::with_capacity(units.len());
        for &a in units {
            let ax = s.conjugation_witness(&ctx.split, a, x)?;
            pi.push(module.sub(value(&f1, &[a, x])?, value(&f1, &[x, ax])?));
        }
        for (i, &a) in units.iter().enumerate() {
            for (j, &b) in units.iter().enumerate() {
                let ab = units
                    .iter()
                    .position(|&c| Some(c) == s.star(a, b))
                    .expect("units are closed");
                let d = module.add(&module.sub(&module.act(a, &pi[j]), &pi[ab]), &pi[i]);
                if !module.is_zero(&d) {
                    return Err(fail("pi_x is a 1-cocycle", vec![x, a, b]));
                }
            }
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut moduli = Vec::new();
        for (k, &a) in units.iter().enumerate() {
            let m = module.action(a);
            for i in 0..r {
                rows.push(
                    (0..r)
                        .map(|j| BigInt::from(m[i][j]) - BigInt::from(u64::from(i == j)))
                        .collect(),
                );
                rhs.push(BigInt::from(pi[k][i]));
                moduli.push(BigInt::from(orders[i]));
            }
        }
        let system = IntMatrix::from_rows(r, rows)?;
        let sol = solve(&system, &rhs, Some(&moduli))?.ok_or(Error::HypothesisFailed(x))?;
        lambda.set_at(&[x], &to_u64(&sol, orders))?;
    }
    let g = f1.sub(&coboundary(module, &lambda, &d2)?);
    for &x in &ctx.split.ideal {
        for &a in units {
            let ax = s.conjugation_witness(&ctx.split, a, x)?;
            if value(&g, &[a, x])? != value(&g, &[x, ax])? {
                return Err(fail("g(a,x) = g(x,a_x)", vec![a, x]));
            }
        }
    }

    // (3) ρ(a t) = g(a, t), h = g + ∂ρ.
    let mut rho = Cochain::zero(d1.clone(), orders);
    for y in 0..s.order() {
        let (t, a) = transversal.factor(y);
        rho.set_at(&[y], value(&g, &[a, t])?)?;
    }
    let h = g.add(&coboundary(module, &rho, &d2)?);

    // (4) Vanishing on unit arguments, U-invariance and coset constancy.
    for &a in units {
        for y in 0..s.order() {
            if !module.is_zero(value(&h, &[a, y])?) {
                return Err(fail("h(a, bt) = 0", vec![a, y]));
            }
            if !module.is_zero(value(&h, &[y, a])?) {
                return Err(fail("h(at, b) = 0", vec![y, a]));
            }
        }
    }
    for t in d2.tuples() {
        let (x, y) = (t[0], t[1]);
        if ctx.split.is_unit(x) || ctx.split.is_unit(y) {
            continue;
        }
        let v = value(&h, t)?;
        for &a in units {
            if module.act(a, v) != v {
                return Err(fail("h(x, y) is U-fixed", vec![a, x, y]));
            }
            let ax = s.star(a, x).expect("unit times nonzero");
            let ay = s.star(a, y).expect("unit times nonzero");
            if value(&h, &[ax, y])? != v {
                return Err(fail("h(ax, y) = h(x, y)", vec![a, x, y]));
            }
            if value(&h, &[x, ay])? != v {
                return Err(fail("h(x, ay) = h(x, y)", vec![a, x, y]));
            }
        }
    }

    // (5) h̄(Us, Ut) = h(s, t) in coordinates of A^U.
    let q = ctx.quotient_module.semigroup();
    let dq2 = Arc::new(domain(q, 2));
    let mut h_bar = Cochain::zero(dq2.clone(), ctx.quotient_module.orders());
    for (i, t) in dq2.tuples().iter().enumerate() {
        let (s_rep, t_rep) = (transversal.rep(t[0]), transversal.rep(t[1]));
        let v = value(&h, &[s_rep, t_rep])?;
        let y = ctx
            .fixed
            .coords(v)
            .map_err(|_| fail("h values lie in A^U", vec![s_rep, t_rep]))?;
        h_bar.set(i, &y);
    }
    Ok(Descent {
        f_normalized: f1,
        g,
        h,
        h_bar,
    })
}

/// `h(as, bt) = h̄'(Us, Ut)` with `h̄'` the normalized `h̄`; zero when either
/// coset is `U`.
pub fn lift_cocycle(ctx: &UnitContext, module: &ZeroModule, transversal: &Transversal, h_bar: &Cochain) -> Result<Cochain> {
    let qm = &ctx.quotient_module;
    let q = qm.semigroup();
    let dq3 = Arc::new(domain(q, 3));
    if !coboundary(qm, h_bar, &dq3)?.is_zero() {
        return Err(Error::NotACocycle);
    }
    let normalized = normalize_two_cocycle(qm, h_bar)?;
    let s = module.semigroup();
    let d2 = Arc::new(domain(s, 2));
    let unit_coset = ctx.quotient.projection[0];
    let mut h = Cochain::zero(d2.clone(), module.orders());
    for (i, t) in d2.tuples().iter().enumerate() {
        let (cs, _) = transversal.coset_of[t[0]];
        let (ct, _) = transversal.coset_of[t[1]];
        if cs == unit_coset || ct == unit_coset {
            continue;
        }
        let v = normalized
            .at(&[cs, ct])
            .ok_or_else(|| Error::DimensionMismatch("coset product vanishes".into()))?;
        h.set(i, &ctx.fixed.embed(v));
    }
    let d3 = Arc::new(domain(s, 3));
    if !coboundary(module, &h, &d3)?.is_zero() {
        return Err(Error::LiftNotCocycle);
    }
    for &a in &ctx.split.units {
        for &b in &ctx.split.units {
            if !module.is_zero(value(&h, &[a, b])?) {
                return Err(Error::LiftNotCocycle);
            }
        }
    }
    Ok(h)
}

/// `γ(a t) = γ̄(Ut)`.
pub fn lift_cochain(ctx: &UnitContext, module: &ZeroModule, transversal: &Transversal, gamma_bar: &Cochain) -> Result<Cochain> {
    let s = module.semigroup();
    let d1 = Arc::new(domain(s, 1));
    let mut gamma = Cochain::zero(d1, module.orders());
    for y in 0..s.order() {
        let (c, _) = transversal.coset_of[y];
        let v = value(gamma_bar, &[c])?;
        gamma.set_at(&[y], &ctx.fixed.embed(v))?;
    }
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteGroup, Modification};
    use crate::cohomology::cohomology;
    use crate::fields::{extension, galois_module};

    fn setup(zero_pairs: &[(usize, usize)]) -> (ZeroModule, UnitContext, Transversal) {
        let e = extension(2, 1, 4).unwrap();
        let spec = galois_module(&e).unwrap();
        let s = Modification::from_zero_set(spec.group.clone(), zero_pairs.iter().copied()).unwrap();
        let m = spec.module_over(&s).unwrap();
        let ctx = UnitContext::new(&m).unwrap();
        let t = Transversal::least(&s, &ctx.quotient);
        (m, ctx, t)
    }

    #[test]
    fn zero_descends_to_zero() {
        let (m, ctx, t) = setup(&[(1, 1), (1, 3), (3, 1), (3, 3)]);
        let f = Cochain::zero(Arc::new(domain(m.semigroup(), 2)), m.orders());
        let d = descend_cocycle(&ctx, &m, &t, &f).unwrap();
        assert!(d.h_bar.is_zero());
        let hb = Cochain::zero(d.h_bar.domain().clone(), ctx.quotient_module.orders());
        assert!(lift_cocycle(&ctx, &m, &t, &hb).unwrap().is_zero());
    }

    #[test]
    fn coboundaries_descend_to_coboundaries() {
        let (m, ctx, t) = setup(&[(1, 1), (1, 3), (3, 1), (3, 3)]);
        let hq = cohomology(&ctx.quotient_module, 2).unwrap();
        let d1 = Arc::new(domain(m.semigroup(), 1));
        let d2 = Arc::new(domain(m.semigroup(), 2));
        for seed in 0..10u64 {
            let vals = (0..d1.len() as u64).map(|i| (seed * 7 + i * i * 3 + 1) % 15).collect();
            let beta = Cochain::from_values(d1.clone(), m.orders(), vals).unwrap();
            let f = coboundary(&m, &beta, &d2).unwrap();
            let d = descend_cocycle(&ctx, &m, &t, &f).unwrap();
            assert!(hq.is_coboundary(&d.h_bar).unwrap());
        }
    }

    #[test]
    fn lift_of_coboundary_is_coboundary_of_lift() {
        let (m, ctx, t) = setup(&[(1, 1), (1, 3), (3, 1), (3, 3)]);
        let qm = &ctx.quotient_module;
        let dq1 = Arc::new(domain(qm.semigroup(), 1));
        let dq2 = Arc::new(domain(qm.semigroup(), 2));
        let d2 = Arc::new(domain(m.semigroup(), 2));
        // γ̄ vanishing at the unit coset keeps the normalization trivial.
        let mut gamma_bar = Cochain::zero(dq1.clone(), qm.orders());
        gamma_bar.set_at(&[1], &[2]).unwrap();
        let h_bar = coboundary(qm, &gamma_bar, &dq2).unwrap();
        let h = lift_cocycle(&ctx, &m, &t, &h_bar).unwrap();
        let gamma = lift_cochain(&ctx, &m, &t, &gamma_bar).unwrap();
        assert_eq!(h, coboundary(&m, &gamma, &d2).unwrap());
    }

    #[test]
    fn not_in_kernel_of_phi() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let m = ZeroModule::trivial_action(Modification::full(g), vec![2]).unwrap();
        let ctx = UnitContext::new(&m).unwrap();
        let t = Transversal::least(m.semigroup(), &ctx.quotient);
        let h = cohomology(&m, 2).unwrap();
        let f = &h.representatives()[0];
        assert_eq!(descend_cocycle(&ctx, &m, &t, f).unwrap_err(), Error::NotInKernelOfPhi);
    }

    #[test]
    fn hypothesis_failure_reported() {
        // U = {1, g^2} acting trivially on Z/2: H^1(U, Z/2) = Z/2.
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let s = Modification::from_zero_set(g, [(1, 1), (1, 3), (3, 1), (3, 3)]).unwrap();
        let m = ZeroModule::trivial_action(s, vec![2]).unwrap();
        let ctx = UnitContext::new(&m).unwrap();
        let t = Transversal::least(m.semigroup(), &ctx.quotient);
        let d2 = Arc::new(domain(m.semigroup(), 2));
        let d3 = Arc::new(domain(m.semigroup(), 3));
        // Search for a cocycle vanishing on U × U whose π_x is not a coboundary.
        let free: Vec<usize> = (0..d2.len())
            .filter(|&i| d2.tuples()[i].iter().any(|&x| x % 2 == 1))
            .collect();
        let mut found = false;
        for mask in 0u64..(1 << free.len()) {
            let mut f = Cochain::zero(d2.clone(), &[2]);
            for (k, &i) in free.iter().enumerate() {
                f.set(i, &[mask >> k & 1]);
            }
            if !coboundary(&m, &f, &d3).unwrap().is_zero() {
                continue;
            }
            if let Err(Error::HypothesisFailed(_)) = descend_cocycle(&ctx, &m, &t, &f) {
                found = true;
                break;
            }
        }
        assert!(found);
    }
}
