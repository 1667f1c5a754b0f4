//! Compatibility of a Poisson bracket with a weighted degree filtration.

use crate::poly::{Bivector, Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compatibility {
    /// `{F_{m₁}, F_{m₂}} ⊆ F_{m₁+m₂−1}`.
    Strong,
    /// `{F_{m₁}, F_{m₂}} ⊆ F_{m₁+m₂}`.
    Compatible,
    Incompatible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub level: Compatibility,
    /// Largest `w({m₁,m₂}) − w(m₁) − w(m₂)` over nonzero brackets, if any.
    pub max_excess: Option<i64>,
    /// First pair (in enumeration order) whose excess rules out the next
    /// stronger level, with that excess.
    pub witness: Option<(Monomial, Monomial, i64)>,
    pub pairs_checked: usize,
}

fn weight_of(m: &Monomial, weights: &[u32]) -> i64 {
    m.exps().iter().zip(weights).map(|(&e, &w)| e as i64 * w as i64).sum()
}

pub fn poly_weight(p: &Poly, weights: &[u32]) -> Option<i64> {
    p.terms().map(|(m, _)| weight_of(m, weights)).max()
}

/// Non-constant monomials of weight at most `bound`, ordered by weight then
/// graded-lex.
pub fn monomials_up_to_weight(n: usize, weights: &[u32], bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, weights: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        let mut e = 0;
        while e * weights[i] <= left {
            cur[i] = e;
            rec(i + 1, left - e * weights[i], weights, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, bound, weights, &mut cur, &mut out);
    out.retain(|m| m.degree() > 0);
    out.sort_by(|a, b| weight_of(a, weights).cmp(&weight_of(b, weights)).then_with(|| a.cmp(b)));
    out
}

/// Classifies the filtration defined by positive per-variable weights against
/// the bracket, checking every monomial pair with total weight at most `bound`.
pub fn filtration_compat_check(gamma: &Bivector, weights: &[u32], bound: u32) -> CompatReport {
    let n = gamma.nvars();
    assert_eq!(weights.len(), n, "one weight per variable");
    let monos = monomials_up_to_weight(n, weights, bound);
    let mut max_excess: Option<i64> = None;
    let mut first_nonneg: Option<(Monomial, Monomial, i64)> = None;
    let mut first_pos: Option<(Monomial, Monomial, i64)> = None;
    let mut pairs = 0;
    for (i, m1) in monos.iter().enumerate() {
        let w1 = weight_of(m1, weights);
        for m2 in &monos[i + 1..] {
            let w2 = weight_of(m2, weights);
            if w1 + w2 > bound as i64 {
                continue;
            }
            pairs += 1;
            let f = Poly::monomial(m1.clone(), num_traits::One::one());
            let g = Poly::monomial(m2.clone(), num_traits::One::one());
            let br = gamma.bracket(&f, &g).expect("matching variable counts");
            let Some(w) = poly_weight(&br, weights) else {
                continue;
            };
            let excess = w - w1 - w2;
            max_excess = Some(max_excess.map_or(excess, |m| m.max(excess)));
            if excess >= 0 && first_nonneg.is_none() {
                first_nonneg = Some((m1.clone(), m2.clone(), excess));
            }
            if excess > 0 && first_pos.is_none() {
                first_pos = Some((m1.clone(), m2.clone(), excess));
            }
        }
    }
    let (level, witness) = match max_excess {
        Some(e) if e > 0 => (Compatibility::Incompatible, first_pos),
        Some(0) => (Compatibility::Compatible, first_nonneg),
        _ => (Compatibility::Strong, None),
    };
    CompatReport {
        level,
        max_excess,
        witness,
        pairs_checked: pairs,
    }
}
