//! Acceptance gate: twelve exact checks, one pass/fail line each.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use common::*;
use dquant::algebroid::{
    cech_cohomology, central_twist, coboundary_2, gauge_fix, hom_compose, path_compare, verify_algebroid,
    AlgebroidData, Constraint, Element, GaugeOutcome, SCAlgebra, SimplicialComplex, Verdict,
};
use dquant::poly::{jacobi_check, BiDiffOp, Bivector, Monomial, Poly, PolyVector};
use dquant::quadratic::{dehomogenize, dequant_first_order, homogenize, quant_map, wedge_rank};
use dquant::rational::{rat, Rat};
use dquant::rees::{pn_tangency_check, rees_from_filtration, weyl_presentation, TangencyFailure};
use dquant::star::{
    assoc_residual, assoc_residual_on, hkr_class, moyal, moyal_central, star_solve, AnsatzSpec, SolveOutcome,
    StarProduct,
};
use dquant::trunc::Trunc;
use dquant::Error;
use num_traits::{One, Zero};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solve(g: &Bivector, order: usize, spec: &AnsatzSpec) -> Result<StarProduct, String> {
    match star_solve(g, order, spec) {
        Ok(SolveOutcome::Solved(s)) => Ok(s),
        Ok(SolveOutcome::Obstructed(o)) => Err(format!("obstructed at order {} for {g:?}", o.order)),
        Err(e) => Err(format!("{e} for {g:?}")),
    }
}

/// `{{f,g},h} + cyclic` on every coordinate triple, straight from the bracket.
fn jacobiator_vanishes(g: &Bivector) -> bool {
    let n = g.nvars();
    let br = |a: &Poly, b: &Poly| g.bracket(a, b).unwrap();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (0..n).all(|k| {
                let (f, gg, h) = (x(n, i), x(n, j), x(n, k));
                let s = &(&br(&br(&f, &gg), &h) + &br(&br(&gg, &h), &f)) + &br(&br(&h, &f), &gg);
                s.is_zero()
            })
        })
    })
}

// 1 ------------------------------------------------------------------------

/// `Σ_k ℏ^k/k! · μ∘P^k(f⊗g)` with `P = Σ γ^{ij} ∂_i⊗∂_j`, acting on explicit
/// tensors.
fn moyal_oracle(g: &Bivector, order: usize, f: &Poly, h: &Poly) -> Vec<Poly> {
    let n = g.nvars();
    let mut tensor = vec![(f.clone(), h.clone())];
    let mut out = Vec::new();
    let mut fact = Rat::one();
    for k in 0..=order {
        if k > 0 {
            fact *= rat(k as i64);
            let mut next = Vec::new();
            for (a, b) in &tensor {
                for i in 0..n {
                    for j in 0..n {
                        let c = g.get(i, j);
                        if c.is_zero() {
                            continue;
                        }
                        let (da, db) = (a.partial(i).unwrap(), b.partial(j).unwrap());
                        if !da.is_zero() && !db.is_zero() {
                            next.push((&c * &da, db));
                        }
                    }
                }
            }
            tensor = next;
        }
        let mut sum = Poly::zero(n);
        for (a, b) in &tensor {
            sum.add_mul(a, b);
        }
        out.push(sum.scale(&(Rat::one() / &fact)));
    }
    out
}

fn moyal_exactness() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(101);
    let order = 8;
    for case in 0..50 {
        let n = rng.gen_range(2..=4);
        let g = random_constant_bivector(&mut rng, n);
        let s = moyal(&g, order).map_err(|e| e.to_string())?;
        let (f, gg, h) = (
            random_poly(&mut rng, n, 0, 4, 0.25),
            random_poly(&mut rng, n, 0, 4, 0.25),
            random_poly(&mut rng, n, 0, 4, 0.25),
        );
        for k in 0..=order {
            let r = assoc_residual_on(&s, k, &f, &gg, &h).map_err(|e| e.to_string())?;
            ensure(r.is_zero(), || format!("case {case}: residual at k = {k} is {r}"))?;
        }
        let prod = s.multiply_polys(&f, &gg).map_err(|e| e.to_string())?;
        ensure(prod.coeffs() == moyal_oracle(&g, order, &f, &gg).as_slice(), || {
            format!("case {case}: product disagrees with the exponential formula")
        })?;
        for i in 0..n {
            for j in 0..n {
                let ij = s.multiply_polys(&x(n, i), &x(n, j)).unwrap();
                let ji = s.multiply_polys(&x(n, j), &x(n, i)).unwrap();
                let comm = ij.try_sub(&ji).unwrap();
                let expect = g.get(i, j).scale(&rat(2));
                ensure(comm.coeff(0).is_zero() && *comm.coeff(1) == expect, || {
                    format!("case {case}: [x{i},x{j}] wrong")
                })?;
                ensure(comm.coeffs()[2..].iter().all(Poly::is_zero), || {
                    format!("case {case}: higher commutator terms")
                })?;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("50 bivectors, k ≤ 8, {:.1}s", t.as_secs_f64()))
}

// 2 ------------------------------------------------------------------------

fn ratio_of(a: &PolyVector, b: &PolyVector) -> Option<Rat> {
    let (idx, pb) = b.components().find(|(_, p)| !p.is_zero())?;
    let pa = a.component(idx);
    let (m, cb) = pb.terms().next()?;
    Some(pa.coeff(m) / cb)
}

fn obstruction_theorem() -> Outcome {
    // Calibrate once on a generic symbolic instance.
    let n = 3;
    let calib = Bivector::from_entries(n, [(0, 1, x(n, 2).pow(2)), (1, 2, x(n, 1))]).unwrap();
    let c = match star_solve(&calib, 2, &AnsatzSpec::default()).map_err(|e| e.to_string())? {
        SolveOutcome::Obstructed(o) => {
            let sq = jacobi_sq(&calib);
            ratio_of(&o.hkr, &sq).ok_or("calibration instance has zero class")?
        }
        SolveOutcome::Solved(_) => return Err("calibration instance solved".into()),
    };
    let mut rng = rng(202);
    let (mut solved, mut obstructed) = (0, 0);
    for case in 0..20 {
        let g = if case % 2 == 0 {
            poisson_3d_low_degree(&mut rng)
        } else {
            random_bivector(&mut rng, 3, 0, 2, 0.35)
        };
        let poisson = jacobiator_vanishes(&g);
        ensure(poisson == jacobi_check(&g).passed(), || {
            format!("case {case}: jacobi_check disagrees with oracle")
        })?;
        match star_solve(&g, 2, &AnsatzSpec::default()) {
            Ok(SolveOutcome::Solved(s)) => {
                ensure(poisson, || format!("case {case}: solved a non-Poisson bracket"))?;
                for k in 0..=2 {
                    ensure(assoc_residual(&s, k).unwrap().is_zero(), || {
                        format!("case {case}: residual {k}")
                    })?;
                }
                solved += 1;
            }
            Ok(SolveOutcome::Obstructed(o)) => {
                ensure(!poisson, || format!("case {case}: obstruction for a Poisson bracket"))?;
                let expect = jacobi_sq(&g).scale(&c);
                ensure(o.hkr == expect, || format!("case {case}: hkr ≠ c·[γ,γ]"))?;
                ensure(hkr_class(&o.residual) == o.hkr, || format!("case {case}: stored class"))?;
                obstructed += 1;
            }
            Err(e) => return Err(format!("case {case}: {e}")),
        }
    }
    ensure(solved > 0 && obstructed > 0, || {
        "family did not cover both outcomes".into()
    })?;
    Ok(format!("c = {c}; {solved} solved, {obstructed} obstructed"))
}

fn jacobi_sq(g: &Bivector) -> PolyVector {
    match jacobi_check(g) {
        dquant::poly::JacobiVerdict::Pass => PolyVector::zero(g.nvars(), 3),
        dquant::poly::JacobiVerdict::Fail(sq) => sq,
    }
}

// 3, 4, 5, 6 ---------------------------------------------------------------

fn quadratic_family(seed: u64) -> Vec<Bivector> {
    let mut rng = rng(seed);
    (0..10)
        .map(|i| quadratic_poisson(&mut rng, if i % 2 == 0 { 2 } else { 3 }))
        .collect()
}

fn quadratic_grading() -> Outcome {
    let spec = AnsatzSpec {
        deriv_bound: None,
        homogeneous_only: true,
    };
    let mut checked = 0usize;
    for (case, g) in quadratic_family(303).iter().enumerate() {
        let n = g.nvars();
        let order = if n == 2 { 3 } else { 2 };
        let s = solve(g, order, &spec)?;
        let monos = Monomial::all_in_degrees(n, 0, 5);
        for (k, b) in s.ops().iter().enumerate() {
            for a in &monos {
                for c in &monos {
                    let d = a.degree() + c.degree();
                    if d > 5 {
                        continue;
                    }
                    let v = b
                        .apply(
                            &Poly::monomial(a.clone(), Rat::one()),
                            &Poly::monomial(c.clone(), Rat::one()),
                        )
                        .unwrap();
                    ensure(v.is_zero() || (v.is_homogeneous() && v.degree() == Some(d)), || {
                        format!("case {case}: B_{k} leaves Sym^{d}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("10 brackets, {checked} monomial pairs"))
}

/// `(…((x_{w0} * x_{w1}) * x_{w2}) …)` from the star product itself.
fn nested_product(s: &StarProduct, word: &[usize]) -> dquant::poly::HSeries {
    let n = s.nvars();
    let mut acc = dquant::poly::HSeries::from_poly(x(n, word[0]), s.order());
    for &a in &word[1..] {
        let rhs = dquant::poly::HSeries::from_poly(x(n, a), s.order());
        acc = dquant::star::star_multiply(s, &acc, &rhs).unwrap();
    }
    acc
}

fn word_of(n: usize, mut idx: usize, d: usize) -> Vec<usize> {
    let mut w = vec![0; d];
    for slot in (0..d).rev() {
        w[slot] = idx % n;
        idx /= n;
    }
    w
}

/// `Σ_w u_w · (x_{w0} * … )` must vanish for relations `u`.
fn annihilated(s: &StarProduct, row: &[Trunc], d: usize) -> bool {
    let n = s.nvars();
    let order = s.order();
    let mut total = vec![Poly::zero(n); order + 1];
    for (idx, coef) in row.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let p = nested_product(s, &word_of(n, idx, d));
        for a in 0..=order {
            for b in 0..=order - a {
                let c = coef.coeff(a);
                if !c.is_zero() {
                    total[a + b] = &total[a + b] + &p.coeff(b).scale(c);
                }
            }
        }
    }
    total.iter().all(Poly::is_zero)
}

fn relations_and_containment() -> Outcome {
    let spec = AnsatzSpec {
        deriv_bound: None,
        homogeneous_only: true,
    };
    let mut members = 0;
    for (case, g) in quadratic_family(303).iter().enumerate() {
        let n = g.nvars();
        let q = quant_map(g, 2).map_err(|e| format!("case {case}: {e}"))?;
        ensure(q.r2.rows() == wedge_rank(n), || {
            format!("case {case}: rank R2 = {} ≠ {}", q.r2.rows(), wedge_rank(n))
        })?;
        let rep = q.validate().map_err(|e| e.to_string())?;
        ensure(rep.holds(), || {
            format!("case {case}: containment fails at {:?}", rep.non_members)
        })?;
        members += rep.checked;
        // Independent check: the relations hold in the star product.
        let s = solve(g, 2, &spec)?;
        for r in 0..q.r2.rows() {
            ensure(annihilated(&s, q.r2.row(r), 2), || {
                format!("case {case}: R2 row {r} not a relation")
            })?;
        }
        for r in 0..q.r3.rows() {
            ensure(annihilated(&s, q.r3.row(r), 3), || {
                format!("case {case}: R3 row {r} not a relation")
            })?;
        }
    }
    Ok(format!("10 brackets, {members} membership solves"))
}

fn quant_roundtrip() -> Outcome {
    for (case, g) in quadratic_family(505).iter().enumerate() {
        let q = quant_map(g, 2).map_err(|e| format!("case {case}: {e}"))?;
        let back = dequant_first_order(&q).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == *g, || format!("case {case}: {back:?} ≠ {g:?}"))?;
    }
    Ok("10 brackets".into())
}

fn cone_equivariance() -> Outcome {
    let lambdas = [rat(2), rat(-1), Rat::new(1.into(), 3.into())];
    let mut count = 0;
    for (case, g) in quadratic_family(606).iter().enumerate() {
        let q = quant_map(g, 2).map_err(|e| e.to_string())?;
        for l in &lambdas {
            let ql = quant_map(&g.scale(l), 2).map_err(|e| e.to_string())?;
            ensure(ql.r2 == q.r2.rescale(l) && ql.r3 == q.r3.rescale(l), || {
                format!("case {case}: λ = {l} breaks ℏ ↦ λℏ")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} rescalings"))
}

// 7 ------------------------------------------------------------------------

fn bivector_of_degree(rng: &mut TestRng, n: usize, d: u32) -> Bivector {
    loop {
        let g = random_bivector(rng, n, 0, d, 0.3);
        if g.max_degree() == Some(d) {
            return g;
        }
    }
}

fn degree_criterion() -> Outcome {
    let mut rng = rng(707);
    let mut cases: Vec<Bivector> = (0..29)
        .map(|i| {
            let n = if i % 2 == 0 { 2 } else { 3 };
            bivector_of_degree(&mut rng, n, (i % 5) as u32)
        })
        .collect();
    let cubic = Bivector::from_entries(3, [(0, 1, x(3, 2).pow(3))]).unwrap();
    cases.push(cubic.clone());
    let mut quantizable = 0;
    for (case, g) in cases.iter().enumerate() {
        let rep = pn_tangency_check(g);
        let expect = g.max_degree().is_none_or(|d| d <= 2);
        ensure(rep.quantizable == expect, || {
            format!(
                "case {case}: verdict {} for degree {:?}",
                rep.quantizable,
                g.max_degree()
            )
        })?;
        quantizable += usize::from(expect);
    }
    let rep = pn_tangency_check(&cubic);
    ensure(rep.failure == Some(TangencyFailure::Extension), || {
        format!("cubic bracket fails with {:?}", rep.failure)
    })?;
    Ok(format!(
        "30 bivectors, {quantizable} quantizable; cubic fails at infinity"
    ))
}

// 8 ------------------------------------------------------------------------

fn cubic_central() -> Outcome {
    let n = 3;
    let p = x(n, 2).pow(3);
    let g = Bivector::from_entries(n, [(0, 1, p.clone())]).unwrap();
    let s = moyal_central(&g, 6).map_err(|e| e.to_string())?;
    // Closed form: (P^k/k!)(∂₁⊗∂₂ − ∂₂⊗∂₁)^k.
    let e = |i| Monomial::var(n, i);
    let d = BiDiffOp::from_summands(n, [(Poly::one(n), e(0), e(1)), (-Poly::one(n), e(1), e(0))]).unwrap();
    let mut power = BiDiffOp::multiplication(n);
    let mut fact = Rat::one();
    for k in 0..=6 {
        if k > 0 {
            power = power.symbol_mul(&d);
            fact *= rat(k as i64);
        }
        let coef = p.pow(k as u32).scale(&(Rat::one() / &fact));
        let closed =
            BiDiffOp::from_summands(n, power.summands().map(|((a, b), c)| (c * &coef, a.clone(), b.clone()))).unwrap();
        ensure(*s.op(k) == closed, || format!("B_{k} differs from the closed form"))?;
        ensure(assoc_residual(&s, k).unwrap().is_zero(), || {
            format!("closed form not associative at {k}")
        })?;
    }
    let solved = solve(&g, 4, &AnsatzSpec::default())?;
    for k in 0..=4 {
        ensure(assoc_residual(&solved, k).unwrap().is_zero(), || {
            format!("solver residual at {k}")
        })?;
    }
    Ok("closed form associative to ℏ^6; solver reaches N = 4".into())
}

// 9 ------------------------------------------------------------------------

fn homogenization() -> Outcome {
    let mut rng = rng(909);
    let mut poisson = 0;
    for case in 0..20 {
        let g = match case % 4 {
            0 | 1 => poisson_3d_low_degree(&mut rng),
            2 => random_bivector(&mut rng, 2, 0, 2, 0.5),
            _ => random_bivector(&mut rng, 3, 0, 2, 0.3),
        };
        let n = g.nvars();
        let h = homogenize(&g).map_err(|e| e.to_string())?;
        ensure(h.is_homogeneous_of_degree(2) || h.is_zero(), || {
            format!("case {case}: not homogeneous")
        })?;
        let before = jacobiator_vanishes(&g);
        ensure(before == jacobiator_vanishes(&h), || {
            format!("case {case}: Jacobi not preserved")
        })?;
        poisson += usize::from(before);
        // z = 1 by direct substitution.
        let mut images: Vec<Poly> = (0..n).map(|i| x(n, i)).collect();
        images.push(Poly::one(n));
        for i in 0..n {
            for j in i + 1..n {
                let sub = h.get(i, j).substitute(&images).unwrap();
                ensure(sub == g.get(i, j), || format!("case {case}: z = 1 misses γ^{i}{j}"))?;
            }
        }
        ensure(dehomogenize(&h).map_err(|e| e.to_string())? == g, || {
            format!("case {case}: dehomogenize")
        })?;
    }
    Ok(format!("20 brackets ({poisson} Poisson)"))
}

// 10 -----------------------------------------------------------------------

fn rees_identities() -> Outcome {
    let rees = rees_from_filtration(&weyl_presentation(6)).map_err(|e| e.to_string())?;
    let t = rees.t;
    let comm = rees.commutator(0, 1);
    let expect = BTreeMap::from([(vec![t, t], Rat::one())]);
    ensure(comm == expect, || {
        format!("xy − yx = {}", rees.graded.format_expr(&comm))
    })?;
    let rep = rees.verify();
    ensure(rep.t_central, || "t is not central".into())?;
    ensure(rep.gr_commutative, || "Rees/(t) is not commutative".into())?;
    ensure(rep.specializes_to_source, || "t = 1 does not recover the input".into())?;
    ensure(rep.passed(), || format!("{rep:?}"))?;
    Ok(format!("xy − yx = t², {} words", rep.words_checked))
}

// 11, 12 -------------------------------------------------------------------

const ORDER: usize = 2;

fn random_unit(rng: &mut TestRng, alg: &SCAlgebra) -> Element {
    // Unipotent-times-diagonal 2×2 matrices with ℏ-corrections.
    let o = alg.order();
    let mut e = alg.zero();
    e[0] = Trunc::from_coeffs(
        (0..=o)
            .map(|k| {
                rat(if k == 0 {
                    rng.gen_range(1..=3)
                } else {
                    rng.gen_range(-2..=2)
                })
            })
            .collect(),
    )
    .unwrap();
    e[1] = Trunc::from_coeffs((0..=o).map(|_| rat(rng.gen_range(-2..=2))).collect()).unwrap();
    e[2] = Trunc::from_coeffs(
        (0..=o)
            .map(|k| rat(if k == 0 { 0 } else { rng.gen_range(-2..=2) }))
            .collect(),
    )
    .unwrap();
    e[3] = Trunc::from_coeffs(
        (0..=o)
            .map(|k| {
                rat(if k == 0 {
                    rng.gen_range(1..=3)
                } else {
                    rng.gen_range(-2..=2)
                })
            })
            .collect(),
    )
    .unwrap();
    e
}

fn transport(rng: &mut TestRng, complex: &SimplicialComplex, alg: &SCAlgebra) -> BTreeMap<(usize, usize), Element> {
    complex.edges().map(|&[i, j]| ((i, j), random_unit(rng, alg))).collect()
}

fn scaled(alg: &SCAlgebra, e: &Element, s: &Trunc) -> Element {
    alg.mul(e, &alg.scalar(s))
}

fn expect_fail(d: &AlgebroidData, c: Constraint) -> Result<(), String> {
    match verify_algebroid(d) {
        Verdict::Fail { constraint, .. } if constraint == c => Ok(()),
        other => Err(format!("expected {} violation, got {other:?}", c.name())),
    }
}

/// `F(p) = f_{p_{m−1}p_m} ⋯ f_{p_0p_1}`.
fn path_transport(alg: &SCAlgebra, f: &BTreeMap<(usize, usize), Element>, p: &[usize]) -> Element {
    let mut acc = alg.unit().clone();
    for w in p.windows(2) {
        let step = match f.get(&(w[0], w[1])) {
            Some(e) => e.clone(),
            None => alg.inverse(&f[&(w[1], w[0])]).unwrap(),
        };
        acc = alg.mul(&step, &acc);
    }
    acc
}

fn simple_paths(complex: &SimplicialComplex, x: usize, y: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![x]];
    while let Some(p) = stack.pop() {
        let last = *p.last().unwrap();
        if last == y {
            out.push(p);
            continue;
        }
        for w in complex.neighbours(last) {
            if !p.contains(&w) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    out.sort();
    out
}

fn algebroid_suite() -> Outcome {
    let mut rng = rng(1111);
    let alg = SCAlgebra::matrix_algebra(2, ORDER);
    let complex = SimplicialComplex::full_simplex(3);
    let f = transport(&mut rng, &complex, &alg);
    let base = AlgebroidData::from_transport(complex.clone(), &alg, &f, &BTreeMap::new()).map_err(|e| e.to_string())?;
    // A cocycle twist: δ of an edge cochain.
    let b: BTreeMap<[usize; 2], Rat> = complex.edges().map(|e| (*e, rat(rng.gen_range(-3..=3)))).collect();
    let cocycle: BTreeMap<[usize; 3], Rat> = complex
        .faces()
        .map(|&[i, j, k]| ([i, j, k], &b[&[j, k]] - &b[&[i, k]] + &b[&[i, j]]))
        .collect();
    let twist = central_twist(&cocycle, ORDER, 1).unwrap();
    let good = base.twist_faces(&twist).map_err(|e| e.to_string())?;
    ensure(verify_algebroid(&base).passed(), || "untwisted data fails".into())?;
    ensure(verify_algebroid(&good).passed(), || {
        format!("cocycle data fails: {:?}", verify_algebroid(&good))
    })?;

    let lambda = Trunc::monomial(ORDER, 1, rat(1)).exp().unwrap();
    let lambda_inv = lambda.inverse().unwrap();

    let mut v1 = good.clone();
    let e = scaled(&alg, good.face_unit(0, 2, 1).unwrap(), &lambda);
    v1.set_face_unit(0, 2, 1, e).unwrap();
    expect_fail(&v1, Constraint::FaceUnitInverse)?;

    let mut v2 = good.clone();
    let e = scaled(&alg, good.face_unit(1, 2, 0).unwrap(), &lambda);
    v2.set_face_unit(1, 2, 0, e).unwrap();
    let e = scaled(&alg, good.face_unit(1, 0, 2).unwrap(), &lambda_inv);
    v2.set_face_unit(1, 0, 2, e).unwrap();
    expect_fail(&v2, Constraint::Cyclic)?;

    let mut v3 = good.clone();
    let mut v = alg.unit().clone();
    v[1] = Trunc::scalar(ORDER, rat(1));
    let ad = alg.ad_matrix(&v).unwrap();
    let g01 = good.edge_map(0, 1).unwrap().mul(&ad);
    let g10 = ad.inverse().unwrap().mul(good.edge_map(1, 0).unwrap());
    v3.set_edge_map(0, 1, g01).unwrap();
    v3.set_edge_map(1, 0, g10).unwrap();
    expect_fail(&v3, Constraint::Holonomy)?;

    let bump = BTreeMap::from([([0, 1, 2], rat(1))]);
    let v4 = good.twist_faces(&central_twist(&bump, ORDER, 1).unwrap()).unwrap();
    expect_fail(&v4, Constraint::Tetrahedron)?;

    // Path comparison: route independence and agreement with the transport
    // model, for all simple paths between all vertex pairs.
    let mut pairs = 0;
    for x0 in 0..4 {
        for y0 in 0..4 {
            if x0 == y0 {
                continue;
            }
            let paths = simple_paths(&complex, x0, y0);
            let mut u: BTreeMap<(usize, usize), Element> = BTreeMap::new();
            for (a, p1) in paths.iter().enumerate() {
                for (bb, p2) in paths.iter().enumerate() {
                    let val = path_compare(&base, p1, p2).map_err(|e| e.to_string())?;
                    let oracle = alg.mul(
                        &alg.inverse(&path_transport(&alg, &f, p2)).unwrap(),
                        &path_transport(&alg, &f, p1),
                    );
                    ensure(val == oracle, || {
                        format!("u({p1:?},{p2:?}) disagrees with F(p2)⁻¹F(p1)")
                    })?;
                    u.insert((a, bb), path_compare(&good, p1, p2).map_err(|e| e.to_string())?);
                    pairs += 1;
                }
            }
            for a in 0..paths.len() {
                for bb in 0..paths.len() {
                    for c in 0..paths.len() {
                        let composed = alg.mul(&u[&(bb, c)], &u[&(a, bb)]);
                        ensure(composed == u[&(a, c)], || {
                            format!("u({:?},{:?}) depends on the route", paths[a], paths[c])
                        })?;
                    }
                }
            }
        }
    }
    // Composition in the associated category on a basis triple.
    let basis: Vec<Element> = (0..alg.rank()).map(|i| alg.add(alg.unit(), &alg.basis(i))).collect();
    for h in &basis {
        for k in &basis {
            for l in &basis {
                let lk = hom_compose(&good, 2, 1, 3, l, k).unwrap();
                let left = hom_compose(&good, 0, 2, 3, &lk, h).unwrap();
                let kh = hom_compose(&good, 0, 2, 1, k, h).unwrap();
                let right = hom_compose(&good, 0, 1, 3, l, &kh).unwrap();
                ensure(left == right, || "composition is not associative".into())?;
            }
        }
    }

    // First-order reduction, exhaustively over c ∈ {−1,0,1}^faces.
    let faces: Vec<[usize; 3]> = complex.faces().copied().collect();
    let alg1 = SCAlgebra::matrix_algebra(2, 1);
    let trivial = AlgebroidData::trivial(complex.clone(), &alg1).unwrap();
    let mut cocycles = 0;
    for code in 0..81usize {
        let mut c = BTreeMap::new();
        let mut rest = code;
        for face in &faces {
            c.insert(*face, rat((rest % 3) as i64 - 1));
            rest /= 3;
        }
        let one_plus: BTreeMap<[usize; 3], Trunc> = c
            .iter()
            .map(|(face, v)| (*face, Trunc::one(1).add(&Trunc::monomial(1, 1, v.clone()))))
            .collect();
        let d = trivial.twist_faces(&one_plus).unwrap();
        let (i, j, k, l) = (0, 1, 2, 3);
        let identity = &c[&[i, k, l]] + &c[&[i, j, k]] == &c[&[i, j, l]] + &c[&[j, k, l]];
        ensure(
            identity == coboundary_2(&complex, &c).values().all(Zero::is_zero),
            || "δc mismatch".into(),
        )?;
        let verdict = verify_algebroid(&d);
        let tet_ok = !matches!(
            verdict,
            Verdict::Fail {
                constraint: Constraint::Tetrahedron,
                ..
            }
        );
        ensure(verdict.passed() == tet_ok, || format!("unexpected failure {verdict:?}"))?;
        ensure(tet_ok == identity, || format!("tetrahedron ⇔ cocycle fails for {c:?}"))?;
        cocycles += usize::from(identity);
    }
    Ok(format!(
        "4 violations named; {pairs} path pairs; 81 first-order cochains ({cocycles} cocycles)"
    ))
}

fn flat_data(rng: &mut TestRng, complex: &SimplicialComplex, alg: &SCAlgebra) -> AlgebroidData {
    let phi: Vec<Element> = (0..complex.nvertices()).map(|_| random_unit(rng, alg)).collect();
    let f = complex
        .edges()
        .map(|&[i, j]| ((i, j), alg.mul(&phi[j], &alg.inverse(&phi[i]).unwrap())))
        .collect();
    AlgebroidData::from_transport(complex.clone(), alg, &f, &BTreeMap::new()).unwrap()
}

fn gauge_fixing() -> Outcome {
    let mut rng = rng(1212);
    let alg = SCAlgebra::matrix_algebra(2, ORDER);
    let ball = SimplicialComplex::full_simplex(3);
    let flat = flat_data(&mut rng, &ball, &alg);
    let b: BTreeMap<[usize; 2], Rat> = ball.edges().map(|e| (*e, rat(rng.gen_range(-3..=3)))).collect();
    let c: BTreeMap<[usize; 3], Rat> = ball
        .faces()
        .map(|&[i, j, k]| ([i, j, k], &b[&[j, k]] - &b[&[i, k]] + &b[&[i, j]]))
        .collect();
    let data = flat.twist_faces(&central_twist(&c, ORDER, 1).unwrap()).unwrap();
    ensure(verify_algebroid(&data).passed(), || {
        "coboundary data fails verification".into()
    })?;
    match gauge_fix(&data, 1).map_err(|e| e.to_string())? {
        GaugeOutcome::Fixed { data: fixed, .. } => {
            for (&(i, _, _), e) in fixed.face_units() {
                ensure(fixed.algebra(i).is_one_mod(e, 2), || "a ≢ 1 mod ℏ²".into())?;
            }
            ensure(verify_algebroid(&fixed).passed(), || "gauge-fixed data fails".into())?;
        }
        GaugeOutcome::Obstructed(o) => return Err(format!("obstruction on Δ³: {o:?}")),
    }

    let sphere = SimplicialComplex::boundary_tetrahedron();
    let h2 = cech_cohomology(&sphere, 2);
    ensure(h2 == 1, || format!("rank H²(∂Δ³) = {h2}"))?;
    let flat = flat_data(&mut rng, &sphere, &alg);
    let generator = BTreeMap::from([([0, 1, 3], rat(1))]);
    let data = flat.twist_faces(&central_twist(&generator, ORDER, 1).unwrap()).unwrap();
    match gauge_fix(&data, 1) {
        Ok(GaugeOutcome::Obstructed(o)) => {
            ensure(o.order == 1 && o.h2_rank == 1 && o.class == generator, || {
                format!("{o:?}")
            })?;
        }
        Ok(GaugeOutcome::Fixed { .. }) => return Err("generator data on ∂Δ³ was gauge-fixed".into()),
        Err(Error::NotClosed(t)) => return Err(format!("not closed on {t:?}")),
        Err(e) => return Err(e.to_string()),
    }
    Ok("Δ³ fixed mod ℏ²; ∂Δ³ obstructed with rank H² = 1".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("moyal-exactness", moyal_exactness),
        ("obstruction-theorem", obstruction_theorem),
        ("quadratic-grading", quadratic_grading),
        ("relations-rank-containment", relations_and_containment),
        ("quant-dequant-roundtrip", quant_roundtrip),
        ("cone-equivariance", cone_equivariance),
        ("degree-criterion", degree_criterion),
        ("cubic-central", cubic_central),
        ("homogenization", homogenization),
        ("rees-identities", rees_identities),
        ("algebroid-suite", algebroid_suite),
        ("gauge-fixing", gauge_fixing),
    ];
    // Free arguments act as substring filters, like the default harness.
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {ran} criteria passed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
