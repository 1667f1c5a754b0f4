use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use dquant::algebroid::{cech_cohomology, gauge_fix, verify_algebroid, GaugeOutcome, Verdict};
use dquant::json::{
    encode_trunc, parse_json, AlgebroidJson, BivectorJson, ComplexJson, PolyJson, PolyVectorJson, PresentationJson,
    QuadraticDataJson, StarProductJson,
};
use dquant::poly::{jacobi_check, Bivector, JacobiVerdict, Monomial, Poly, PolyVector};
use dquant::quadratic::{
    cubic_relations, dehomogenize, dequant_first_order, homogenize, quad_relations, quant_map, wedge_rank,
    ContainmentReport, QuadraticData,
};
use dquant::rational::{display_rat, Rat};
use dquant::rees::{
    divisor_tangency_check, filtration_compat_check, pn_tangency_check, rees_from_filtration, Compatibility,
    DivisorVerdict, TangencyFailure,
};
use dquant::star::{
    assoc_residual, assoc_residual_on, hkr_class, moyal, star_solve, AnsatzSpec, SolveOutcome, StarProduct,
};
use dquant::trunc::Trunc;
use dquant::{Error, Result};

use crate::report::{InputDigest, Report, Status};
use crate::{Common, Verb};

const ASSOCIATIVITY: &str = "Σ_{i+j=k} B_i(B_j(f,g),h) = Σ_{i+j=k} B_i(f,B_j(g,h))";
const JACOBI: &str = "{{f,g},h} + {{g,h},f} + {{h,f},g} = 0, i.e. [γ,γ] = 0";
const CONTAINMENT: &str = "R^(3) ⊇ R^(2)⊗V + V⊗R^(2)";

struct Input {
    text: String,
    digest: InputDigest,
}

fn load(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let digest = InputDigest::new(path, &bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))?;
    Ok(Input { text, digest })
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Jacobi { .. } => "jacobi",
        Verb::Moyal { .. } => "moyal",
        Verb::StarSolve { .. } => "star-solve",
        Verb::StarCheck { .. } => "star-check",
        Verb::QuadRelations { .. } => "quad-relations",
        Verb::Quant { .. } => "quant",
        Verb::Dequant { .. } => "dequant",
        Verb::Homogenize { .. } => "homogenize",
        Verb::Rees { .. } => "rees",
        Verb::FiltrationCheck { .. } => "filtration-check",
        Verb::TangencyPn { .. } => "tangency-pn",
        Verb::TangencyDivisor { .. } => "tangency-divisor",
        Verb::AlgebroidVerify { .. } => "algebroid-verify",
        Verb::AlgebroidGauge { .. } => "algebroid-gauge",
        Verb::Cech { .. } => "cech",
        Verb::ExploreXyGuess => "explore-xy-guess",
    }
}

fn input_paths(v: &Verb) -> Vec<&Path> {
    match v {
        Verb::Jacobi { input }
        | Verb::Moyal { input }
        | Verb::StarSolve { input, .. }
        | Verb::StarCheck { input, .. }
        | Verb::QuadRelations { input }
        | Verb::Quant { input }
        | Verb::Dequant { input }
        | Verb::Homogenize { input }
        | Verb::Rees { input, .. }
        | Verb::FiltrationCheck { input, .. }
        | Verb::TangencyPn { input }
        | Verb::AlgebroidVerify { input }
        | Verb::AlgebroidGauge { input }
        | Verb::Cech { input, .. } => vec![input],
        Verb::TangencyDivisor { input, divisor } => vec![input, divisor],
        Verb::ExploreXyGuess => vec![],
    }
}

fn uses_order(v: &Verb) -> bool {
    matches!(
        v,
        Verb::Moyal { .. }
            | Verb::StarSolve { .. }
            | Verb::Quant { .. }
            | Verb::AlgebroidGauge { .. }
            | Verb::ExploreXyGuess
    )
}

/// Runs one verb. Input and validation errors become `error` reports.
pub fn run(verb: &Verb, common: &Common) -> Report {
    let name = verb_name(verb);
    let order = uses_order(verb).then_some(common.order);
    let mut inputs = Vec::new();
    let mut texts = Vec::new();
    for p in input_paths(verb) {
        match load(p) {
            Ok(i) => {
                inputs.push(i.digest);
                texts.push(i.text);
            }
            Err(e) => return error_report(Report::new(name, inputs, order), e),
        }
    }
    let mut report = Report::new(name, inputs, order);
    let outcome = match verb {
        Verb::Jacobi { .. } => jacobi(&mut report, &texts[0]),
        Verb::Moyal { .. } => run_moyal(&mut report, &texts[0], common.order),
        Verb::StarSolve {
            ansatz_deriv_bound,
            homogeneous_only,
            ..
        } => {
            let spec = AnsatzSpec {
                deriv_bound: *ansatz_deriv_bound,
                homogeneous_only: *homogeneous_only,
            };
            run_star_solve(&mut report, &texts[0], common.order, &spec)
        }
        Verb::StarCheck { samples, .. } => star_check(&mut report, &texts[0], *samples, common.seed),
        Verb::QuadRelations { .. } => run_quad_relations(&mut report, &texts[0]),
        Verb::Quant { .. } => run_quant(&mut report, &texts[0], common.order),
        Verb::Dequant { .. } => run_dequant(&mut report, &texts[0]),
        Verb::Homogenize { .. } => run_homogenize(&mut report, &texts[0]),
        Verb::Rees { bound, .. } => run_rees(&mut report, &texts[0], *bound),
        Verb::FiltrationCheck { weights, bound, .. } => filtration(&mut report, &texts[0], weights.as_deref(), *bound),
        Verb::TangencyPn { .. } => tangency_pn(&mut report, &texts[0]),
        Verb::TangencyDivisor { .. } => tangency_divisor(&mut report, &texts[0], &texts[1]),
        Verb::AlgebroidVerify { .. } => algebroid_verify(&mut report, &texts[0]),
        Verb::AlgebroidGauge { .. } => algebroid_gauge(&mut report, &texts[0], common.order),
        Verb::Cech { q, .. } => cech(&mut report, &texts[0], *q),
        Verb::ExploreXyGuess => explore_xy(&mut report, common.order),
    };
    match outcome {
        Ok(()) => report,
        Err(e) => error_report(report, e),
    }
}

fn error_report(mut r: Report, e: Error) -> Report {
    r.status = Status::Error;
    r.identity = None;
    r.text = vec![format!("error: {e}")];
    r.result = json!({ "error": e.to_string() });
    r
}

fn read_bivector(text: &str) -> Result<(Bivector, Vec<String>)> {
    let j: BivectorJson = parse_json(text)?;
    let b = j.decode()?;
    Ok((b, j.vars))
}

fn bivector_lines(b: &Bivector, vars: &[String]) -> Vec<String> {
    let mut out: Vec<String> = b
        .entries()
        .filter(|(_, p)| !p.is_zero())
        .map(|(&(i, j), p)| format!("γ^{{{}{}}} = {}", vars[i], vars[j], p.to_string_with(vars)))
        .collect();
    if out.is_empty() {
        out.push("γ = 0".into());
    }
    out
}

fn polyvector_lines(v: &PolyVector, vars: &[String]) -> Vec<String> {
    v.components()
        .filter(|(_, p)| !p.is_zero())
        .map(|(idx, p)| {
            let names: Vec<&str> = idx.iter().map(|&i| vars[i].as_str()).collect();
            format!("[{}] {}", names.join(","), p.to_string_with(vars))
        })
        .collect()
}

fn jacobi(r: &mut Report, text: &str) -> Result<()> {
    let (b, vars) = read_bivector(text)?;
    match jacobi_check(&b) {
        JacobiVerdict::Pass => {
            r.status = Status::Pass;
            r.result = json!({ "jacobi": true });
        }
        JacobiVerdict::Fail(sq) => {
            r.fail(JACOBI);
            r.line("[γ,γ] components:");
            for l in polyvector_lines(&sq, &vars) {
                r.line(format!("  {l}"));
            }
            r.result = json!({ "jacobi": false, "schouten": PolyVectorJson::encode(&sq, &vars) });
        }
    }
    Ok(())
}

fn star_lines(s: &StarProduct) -> Vec<String> {
    let mut out = Vec::new();
    for (k, b) in s.ops().iter().enumerate().skip(1) {
        out.push(format!("B_{k}: {} summands", b.len()));
    }
    out.push(format!(
        "degree-preserving: {}",
        if s.is_degree_preserving() { "yes" } else { "no" }
    ));
    out
}

fn run_moyal(r: &mut Report, text: &str, order: usize) -> Result<()> {
    let (b, vars) = read_bivector(text)?;
    let s = moyal(&b, order)?;
    r.text = star_lines(&s);
    r.result = json!({ "star_product": StarProductJson::encode(&s, &vars) });
    Ok(())
}

fn run_star_solve(r: &mut Report, text: &str, order: usize, spec: &AnsatzSpec) -> Result<()> {
    let (b, vars) = read_bivector(text)?;
    match star_solve(&b, order, spec) {
        Ok(SolveOutcome::Solved(s)) => {
            r.status = Status::Pass;
            r.text = star_lines(&s);
            r.line("output is one gauge representative (free variables set to zero)");
            r.result = json!({ "solved": true, "star_product": StarProductJson::encode(&s, &vars) });
        }
        Ok(SolveOutcome::Obstructed(o)) => {
            r.fail(format!("{ASSOCIATIVITY} at k = {}", o.order));
            r.line(format!("obstruction at order {}", o.order));
            r.line("HKR class of the residual (= 2·[γ,γ]):");
            for l in polyvector_lines(&o.hkr, &vars) {
                r.line(format!("  {l}"));
            }
            r.result = json!({
                "solved": false,
                "obstruction": dquant::json::ObstructionJson::encode(&o, &vars),
            });
        }
        Err(Error::AnsatzTooSmall { order: k, bound }) => {
            r.fail(format!("{ASSOCIATIVITY} at k = {k}"));
            r.line(format!(
                "no solution in the ansatz at order {k}; solvable with derivative bound {bound}"
            ));
            r.result = json!({ "solved": false, "ansatz_too_small": { "order": k, "bound": bound } });
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=4) {
        let d = rng.gen_range(0..=3);
        let mut exps = vec![0u32; n];
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        p.add_term(Monomial::new(exps), Rat::from_integer(rng.gen_range(-3i64..=3).into()));
    }
    p
}

fn star_check(r: &mut Report, text: &str, samples: usize, seed: u64) -> Result<()> {
    let j: StarProductJson = parse_json(text)?;
    let s = j.decode()?;
    r.provenance.order = Some(s.order());
    let mut failing = Vec::new();
    for k in 1..=s.order() {
        if !assoc_residual(&s, k)?.is_zero() {
            failing.push(k);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample_failures = 0usize;
    for _ in 0..samples {
        let (f, g, h) = (
            random_poly(&mut rng, s.nvars()),
            random_poly(&mut rng, s.nvars()),
            random_poly(&mut rng, s.nvars()),
        );
        for k in 1..=s.order() {
            if !assoc_residual_on(&s, k, &f, &g, &h)?.is_zero() {
                sample_failures += 1;
                break;
            }
        }
    }
    r.line(format!("symbolic residual checked for k = 1..={}", s.order()));
    if samples > 0 {
        r.line(format!(
            "{samples} random triples (seed {seed}), {sample_failures} failing"
        ));
    }
    if failing.is_empty() && sample_failures == 0 {
        r.status = Status::Pass;
    } else {
        let first = failing.first().copied().unwrap_or(0);
        r.fail(format!("{ASSOCIATIVITY} at k = {first}"));
        for &k in &failing {
            let hkr = hkr_class(&assoc_residual(&s, k)?);
            r.line(format!("residual nonzero at k = {k}; HKR class:"));
            for l in polyvector_lines(&hkr, &j.vars) {
                r.line(format!("  {l}"));
            }
        }
    }
    r.result = json!({ "failing_orders": failing, "samples": samples, "sample_failures": sample_failures });
    Ok(())
}

fn containment(r: &mut Report, q: &QuadraticData, rep: &ContainmentReport) {
    let expected = wedge_rank(q.dim);
    r.line(format!("rank R^(2) = {} (expected {expected})", q.r2.rows()));
    r.line(format!("rank R^(3) = {}", q.r3.rows()));
    r.line(format!(
        "{} products checked for containment, {} outside R^(3)",
        rep.checked,
        rep.non_members.len()
    ));
    if q.r2.rows() != expected {
        r.fail(format!("rank R^(2) = dim ∧²V = {expected}"));
    } else if !rep.holds() {
        r.fail(CONTAINMENT);
    } else {
        r.status = Status::Pass;
    }
}

fn quadratic_result(q: &QuadraticData, rep: &ContainmentReport) -> Value {
    json!({
        "quadratic_data": QuadraticDataJson::encode(q),
        "containment": {
            "checked": rep.checked,
            "non_members": rep.non_members,
            "annihilated": rep.annihilated,
        },
    })
}

fn run_quad_relations(r: &mut Report, text: &str) -> Result<()> {
    let s = parse_json::<StarProductJson>(text)?.decode()?;
    r.provenance.order = Some(s.order());
    let r2 = quad_relations(&s)?;
    let (r3, rep) = cubic_relations(&s, &r2)?;
    let q = QuadraticData {
        dim: s.nvars(),
        order: s.order(),
        r2,
        r3,
    };
    containment(r, &q, &rep);
    r.result = quadratic_result(&q, &rep);
    Ok(())
}

fn run_quant(r: &mut Report, text: &str, order: usize) -> Result<()> {
    let (b, _) = read_bivector(text)?;
    let q = quant_map(&b, order)?;
    let rep = q.validate()?;
    containment(r, &q, &rep);
    r.line("relations are one gauge representative");
    r.result = quadratic_result(&q, &rep);
    Ok(())
}

fn run_dequant(r: &mut Report, text: &str) -> Result<()> {
    let q = parse_json::<QuadraticDataJson>(text)?.decode()?;
    r.provenance.order = Some(q.order);
    let b = dequant_first_order(&q)?;
    let vars = dquant::json::default_vars(q.dim);
    r.text = bivector_lines(&b, &vars);
    r.result = json!({ "bivector": BivectorJson::encode(&b, &vars) });
    Ok(())
}

fn run_homogenize(r: &mut Report, text: &str) -> Result<()> {
    let (b, mut vars) = read_bivector(text)?;
    let h = homogenize(&b)?;
    vars.push(if vars.iter().any(|v| v == "z") {
        "z0".into()
    } else {
        "z".into()
    });
    let before = jacobi_check(&b).passed();
    let after = jacobi_check(&h).passed();
    let back = dehomogenize(&h)? == b;
    r.text = bivector_lines(&h, &vars);
    r.line(format!("Jacobi before: {before}, after: {after}"));
    r.line(format!("z = 1 recovers input: {back}"));
    if before != after {
        r.fail("[γ,γ] = 0 ⇔ [γ̂,γ̂] = 0");
    } else if !back {
        r.fail("γ̂|_{z=1} = γ");
    } else {
        r.status = Status::Pass;
    }
    r.result = json!({
        "bivector": BivectorJson::encode(&h, &vars),
        "jacobi_before": before,
        "jacobi_after": after,
        "specializes": back,
    });
    Ok(())
}

fn run_rees(r: &mut Report, text: &str, bound: Option<u32>) -> Result<()> {
    let mut p = parse_json::<PresentationJson>(text)?.decode()?;
    if let Some(b) = bound {
        p.bound = b;
    }
    let rees = rees_from_filtration(&p)?;
    let rep = rees.verify();
    let g = &rees.graded;
    r.line(format!("Rees generators: {}", g.generators.join(", ")));
    for rule in &g.rules {
        let lhs: Vec<&str> = rule.lhs.iter().map(|&a| g.generators[a].as_str()).collect();
        let mut rhs = dquant::rees::Expr::new();
        for (c, w) in &rule.rhs {
            *rhs.entry(w.clone()).or_insert_with(|| Rat::from_integer(0.into())) += c;
        }
        r.line(format!("{} = {}", lhs.join(""), g.format_expr(&rhs)));
    }
    r.line(format!("{} words checked up to weight {}", rep.words_checked, p.bound));
    let checks = [
        (rep.source_confluent, "the source rewrite system is confluent"),
        (rep.rees_confluent, "the Rees rewrite system is confluent"),
        (rep.t_central, "t·w = w·t"),
        (rep.specializes_to_source, "Rees(A)/(t − 1) = A"),
        (rep.gr_matches_quotient, "Rees(A)/(t) = gr A"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        Some((_, id)) => r.fail(*id),
        None => r.status = Status::Pass,
    }
    r.line(format!("gr A commutative: {}", rep.gr_commutative));
    r.result = json!({
        "rees": PresentationJson::encode(g),
        "words_checked": rep.words_checked,
        "source_confluent": rep.source_confluent,
        "rees_confluent": rep.rees_confluent,
        "t_central": rep.t_central,
        "specializes_to_source": rep.specializes_to_source,
        "gr_matches_quotient": rep.gr_matches_quotient,
        "gr_commutative": rep.gr_commutative,
    });
    Ok(())
}

fn filtration(r: &mut Report, text: &str, weights: Option<&[u32]>, bound: u32) -> Result<()> {
    let (b, vars) = read_bivector(text)?;
    let n = b.nvars();
    let weights = weights.map_or_else(|| vec![1; n], <[u32]>::to_vec);
    if weights.len() != n || weights.contains(&0) {
        return Err(Error::Parse(format!("expected {n} positive weights")));
    }
    let rep = filtration_compat_check(&b, &weights, bound);
    let level = match rep.level {
        Compatibility::Strong => "strong",
        Compatibility::Compatible => "compatible",
        Compatibility::Incompatible => "incompatible",
    };
    r.line(format!("level: {level} ({} monomial pairs)", rep.pairs_checked));
    if let Some(e) = rep.max_excess {
        r.line(format!("max excess w({{m1,m2}}) − w(m1) − w(m2) = {e}"));
    }
    let witness = rep.witness.as_ref().map(|(a, b2, e)| {
        r.line(format!(
            "witness: {{{}, {}}} with excess {e}",
            a.to_string_with(&vars),
            b2.to_string_with(&vars)
        ));
        json!({ "m1": a.exps(), "m2": b2.exps(), "excess": e })
    });
    if rep.level == Compatibility::Incompatible {
        r.fail("{F_m1, F_m2} ⊆ F_{m1+m2}");
    } else {
        r.status = Status::Pass;
    }
    r.result = json!({
        "level": level,
        "weights": weights,
        "bound": bound,
        "max_excess": rep.max_excess,
        "witness": witness,
        "pairs_checked": rep.pairs_checked,
    });
    Ok(())
}

fn tangency_pn(r: &mut Report, text: &str) -> Result<()> {
    let (b, _) = read_bivector(text)?;
    let rep = pn_tangency_check(&b);
    let mut charts = Vec::new();
    for c in &rep.charts {
        r.line(format!(
            "chart {}: extends {}, tangent {}, min u0 exponent {}",
            c.chart,
            c.extends,
            c.tangent,
            c.min_u0_exponent.map_or_else(|| "-".into(), |e| e.to_string())
        ));
        charts.push(json!({
            "chart": c.chart,
            "extends": c.extends,
            "tangent": c.tangent,
            "min_u0_exponent": c.min_u0_exponent,
            "failing_entry": c.failing_entry,
        }));
    }
    let failure = match rep.failure {
        Some(TangencyFailure::Extension) => {
            r.fail("γ extends across the hyperplane at infinity (no poles in u0)");
            Some("extension")
        }
        Some(TangencyFailure::Tangency) => {
            r.fail("{u0, ·} ⊆ (u0): γ is tangent to the hyperplane at infinity");
            Some("tangency")
        }
        None => {
            r.status = Status::Pass;
            None
        }
    };
    r.line(format!("degree ≤ 2: {}", b.max_degree().is_none_or(|d| d <= 2)));
    r.result = json!({ "quantizable": rep.quantizable, "failure": failure, "charts": charts });
    Ok(())
}

fn tangency_divisor(r: &mut Report, text: &str, divisor: &str) -> Result<()> {
    let (b, vars) = read_bivector(text)?;
    let p = parse_json::<PolyJson>(divisor)?.decode()?;
    if p.nvars() != b.nvars() {
        return Err(Error::NvarsMismatch(p.nvars(), b.nvars()));
    }
    r.line(format!("p = {}", p.to_string_with(&vars)));
    match divisor_tangency_check(&b, &p)? {
        DivisorVerdict::Tangent => {
            r.status = Status::Pass;
            r.result = json!({ "tangent": true });
        }
        DivisorVerdict::NotTangent { coordinate, remainder } => {
            r.fail(format!("{{p, {}}} ∈ (p)", vars[coordinate]));
            r.line(format!(
                "remainder of {{p, {}}} mod p: {}",
                vars[coordinate],
                remainder.to_string_with(&vars)
            ));
            r.result = json!({
                "tangent": false,
                "coordinate": coordinate,
                "remainder": PolyJson::encode(&remainder, &vars),
            });
        }
    }
    Ok(())
}

fn algebroid_verify(r: &mut Report, text: &str) -> Result<()> {
    let d = parse_json::<AlgebroidJson>(text)?.decode()?;
    r.provenance.order = Some(d.order());
    match verify_algebroid(&d) {
        Verdict::Pass => {
            r.status = Status::Pass;
            r.line("all constraints hold");
            r.result = json!({ "passed": true });
        }
        Verdict::Fail { constraint, simplex } => {
            r.fail(constraint.identity());
            r.line(format!("constraint {} fails on {simplex:?}", constraint.name()));
            r.result = json!({ "passed": false, "constraint": constraint.name(), "simplex": simplex });
        }
    }
    Ok(())
}

fn algebroid_gauge(r: &mut Report, text: &str, order: usize) -> Result<()> {
    let d = parse_json::<AlgebroidJson>(text)?.decode()?;
    let m = order.min(d.order());
    r.provenance.order = Some(m);
    match gauge_fix(&d, m) {
        Ok(GaugeOutcome::Fixed { data, edge_units }) => {
            r.status = Status::Pass;
            r.line(format!("face units are 1 mod ℏ^{}", m + 1));
            let units: Vec<Value> = edge_units
                .iter()
                .map(|(e, u)| {
                    r.line(format!("U_{}{} = {u}", e[0], e[1]));
                    json!({ "edge": e, "unit": encode_trunc(u) })
                })
                .collect();
            r.result = json!({ "fixed": true, "edge_units": units, "algebroid": AlgebroidJson::encode(&data) });
        }
        Ok(GaugeOutcome::Obstructed(o)) => {
            r.fail(format!("c = δb at order {} (the class of c in H² is nonzero)", o.order));
            r.line(format!("rank H² = {}", o.h2_rank));
            let class: Vec<Value> = o
                .class
                .iter()
                .map(|(f, c)| {
                    r.line(format!("c_{}{}{} = {}", f[0], f[1], f[2], display_rat(c)));
                    json!({ "face": f, "value": dquant::rational::format_rat(c) })
                })
                .collect();
            r.result = json!({ "fixed": false, "order": o.order, "h2_rank": o.h2_rank, "class": class });
        }
        Err(Error::NotClosed(tet)) => {
            r.fail("δc = 0: c_ikl + c_ijk = c_ijl + c_jkl");
            r.line(format!("lowest-order cochain not closed on {tet:?}"));
            r.result = json!({ "fixed": false, "not_closed": tet });
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn cech(r: &mut Report, text: &str, q: usize) -> Result<()> {
    let c = parse_json::<ComplexJson>(text)?.decode()?;
    if q > 3 {
        return Err(Error::Parse(format!("q = {q} exceeds the supported dimension 3")));
    }
    let rank = cech_cohomology(&c, q);
    r.line(format!("rank H^{q} = {rank}"));
    r.result = json!({ "q": q, "rank": rank });
    Ok(())
}

/// Coefficients of `xy` in an ℏ-series of polynomials, or `None` when other
/// monomials occur.
fn xy_coefficients(s: &dquant::poly::HSeries) -> Option<Vec<Rat>> {
    let xy = Monomial::new(vec![1, 1]);
    s.coeffs()
        .iter()
        .map(|p| p.terms().all(|(m, _)| *m == xy).then(|| p.coeff(&xy)))
        .collect()
}

fn explore_xy(r: &mut Report, order: usize) -> Result<()> {
    let x = |i| Poly::var(2, i);
    let gamma = Bivector::from_entries(2, [(0, 1, &x(0) * &x(1))])?;
    let spec = AnsatzSpec {
        deriv_bound: None,
        homogeneous_only: true,
    };
    let s = match star_solve(&gamma, order, &spec)? {
        SolveOutcome::Solved(s) => s,
        SolveOutcome::Obstructed(o) => return Err(Error::Obstructed(o.order)),
    };
    let xy = s.multiply_polys(&x(0), &x(1))?;
    let yx = s.multiply_polys(&x(1), &x(0))?;
    r.status = Status::Report;
    r.line("{x,y} = xy, homogeneous ansatz; coefficients depend on the gauge choice");
    let names = dquant::json::default_vars(2);
    let series =
        |h: &dquant::poly::HSeries| -> Vec<String> { h.coeffs().iter().map(|p| p.to_string_with(&names)).collect() };
    r.line(format!("x*y = Σ ℏ^k [{}]", series(&xy).join(", ")));
    r.line(format!("y*x = Σ ℏ^k [{}]", series(&yx).join(", ")));
    let mut result = json!({
        "x_star_y": xy.coeffs().iter().map(|p| PolyJson::encode(p, &names)).collect::<Vec<_>>(),
        "y_star_x": yx.coeffs().iter().map(|p| PolyJson::encode(p, &names)).collect::<Vec<_>>(),
    });
    if let (Some(a), Some(b)) = (xy_coefficients(&xy), xy_coefficients(&yx)) {
        let a = Trunc::from_coeffs(a)?;
        let b = Trunc::from_coeffs(b)?;
        let q = b.mul(&a.inverse()?);
        let two = Rat::from_integer(2.into());
        let guess = Trunc::monomial(order, 1, -two).exp()?;
        r.line(format!("y*x = q(ℏ)·(x*y) with q = {q}"));
        r.line(format!("for comparison exp(−2ℏ) = {guess}"));
        result["q"] = json!(encode_trunc(&q));
        result["exp_minus_2hbar"] = json!(encode_trunc(&guess));
    }
    r.result = result;
    Ok(())
}
