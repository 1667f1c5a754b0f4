//! Order-by-order construction of a star product from a bivector.
//!
//! At order `k` the unknown `B_k` must satisfy `δB_k = Q_k`, where `δ` is the
//! Hochschild coboundary and `Q_k` collects the compositions of lower-order
//! operators. On a summand `c ∂^α⊗∂^β` the coboundary leaves `c` alone and only
//! redistributes the multi-indices, preserving the total `σ = α+β`. The linear
//! system therefore splits into independent blocks labelled by a coefficient
//! monomial `m` and a total multi-index `σ`, which are solved in parallel.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::{hkr_class, residual_from_ops, StarProduct};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::par::{IntoParallelIterator, ParallelIterator};
use crate::poly::{BiDiffOp, Bivector, Monomial, Poly, PolyVector, TriDiffOp};
use crate::rational::{binomial, Rat};

/// Shape of the space searched for `B_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnsatzSpec {
    /// Maximum derivative order in each slot. `None` means `k` at order `k`.
    pub deriv_bound: Option<usize>,
    /// Require coefficient degree to equal `max(0, k(d−2) + |α|+|β|)` exactly
    /// instead of bounding it, where `d` is the top degree of `γ`.
    pub homogeneous_only: bool,
}

impl AnsatzSpec {
    fn bound_at(&self, k: usize) -> usize {
        self.deriv_bound.unwrap_or(k)
    }
}

/// A failure to extend: the partial product through order `order − 1`, the
/// residual left at `order` by the best partial `B_order`, and its HKR class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub order: usize,
    pub partial: StarProduct,
    pub residual: TriDiffOp,
    pub hkr: PolyVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(StarProduct),
    Obstructed(Obstruction),
}

impl SolveOutcome {
    pub fn solved(&self) -> Option<&StarProduct> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            SolveOutcome::Obstructed(_) => None,
        }
    }
}

type Key3 = (Monomial, Monomial, Monomial);

struct Block {
    coeff_mono: Monomial,
    total: Monomial,
    rhs: Vec<(Key3, Rat)>,
}

struct BlockSolution {
    consistent: bool,
    summands: Vec<(Monomial, Monomial, Poly)>,
}

/// Builds `B₀ = ·`, `B₁ = Σ γ^{ij}∂_i⊗∂_j` and solves for `B₂ … B_N`.
///
/// If some order has no solution in the ansatz, the search is repeated with
/// the derivative bound raised by one and the coefficient-degree rule lifted.
/// Success there means the original ansatz was too small; failure is reported
/// as an obstruction.
pub fn star_solve(gamma: &Bivector, order: usize, spec: &AnsatzSpec) -> Result<SolveOutcome> {
    let n = gamma.nvars();
    let d = gamma.max_degree().unwrap_or(0) as i64;
    let mut ops = vec![BiDiffOp::multiplication(n)];
    if order >= 1 {
        ops.push(BiDiffOp::pairing(gamma));
    }
    for k in 2..=order {
        ops.push(BiDiffOp::zero(n));
        let q = residual_from_ops(&ops, k);
        let blocks = split_blocks(&q);
        let bound = spec.bound_at(k);
        let rule = |m: &Monomial, sigma: &Monomial| -> bool {
            let target = (k as i64 * (d - 2) + sigma.degree() as i64).max(0);
            let deg = m.degree() as i64;
            if spec.homogeneous_only {
                deg == target
            } else {
                deg <= target
            }
        };
        let sols = solve_blocks(&blocks, bound, &rule);
        if sols.iter().all(|s| s.consistent) {
            ops[k] = assemble(n, sols);
            continue;
        }
        let relaxed = solve_blocks(&blocks, bound + 1, &|_: &Monomial, _: &Monomial| true);
        if relaxed.iter().all(|s| s.consistent) {
            return Err(Error::AnsatzTooSmall {
                order: k,
                bound: bound + 1,
            });
        }
        ops[k] = assemble(n, relaxed);
        let residual = residual_from_ops(&ops, k);
        let hkr = hkr_class(&residual);
        ops.truncate(k);
        return Ok(SolveOutcome::Obstructed(Obstruction {
            order: k,
            partial: StarProduct { nvars: n, ops },
            residual,
            hkr,
        }));
    }
    Ok(SolveOutcome::Solved(StarProduct { nvars: n, ops }))
}

fn split_blocks(q: &TriDiffOp) -> Vec<Block> {
    let mut map: BTreeMap<(Monomial, Monomial), Vec<(Key3, Rat)>> = BTreeMap::new();
    for ((a, b, c), poly) in q.summands() {
        let total = a.mul(b).mul(c);
        for (m, coef) in poly.terms() {
            map.entry((m.clone(), total.clone()))
                .or_default()
                .push(((a.clone(), b.clone(), c.clone()), coef.clone()));
        }
    }
    map.into_iter()
        .map(|((coeff_mono, total), rhs)| Block { coeff_mono, total, rhs })
        .collect()
}

fn solve_blocks<F>(blocks: &[Block], bound: usize, rule: &F) -> Vec<BlockSolution>
where
    F: Fn(&Monomial, &Monomial) -> bool + Sync,
{
    blocks
        .iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|b| solve_block(b, bound, rule(&b.coeff_mono, &b.total)))
        .collect()
}

fn solve_block(block: &Block, bound: usize, allowed: bool) -> BlockSolution {
    let columns: Vec<(Monomial, Monomial)> = if allowed {
        sub_monomials(&block.total)
            .into_iter()
            .filter_map(|alpha| {
                let beta = block.total.divide(&alpha)?;
                let (da, db) = (alpha.degree() as usize, beta.degree() as usize);
                // |α| = |β| = 1 summands are cocycles and never help.
                let useful = da >= 1 && db >= 1 && da <= bound && db <= bound && !(da == 1 && db == 1);
                useful.then_some((alpha, beta))
            })
            .collect()
    } else {
        Vec::new()
    };
    let images: Vec<Vec<(Key3, Rat)>> = columns.iter().map(|(a, b)| coboundary(a, b)).collect();

    let order: Vec<Key3> = block
        .rhs
        .iter()
        .chain(images.iter().flatten())
        .map(|(key, _)| key.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&Key3, usize> = order.iter().enumerate().map(|(i, k)| (k, i)).collect();

    let mut a = QMatrix::zeros(order.len(), columns.len());
    for (j, img) in images.iter().enumerate() {
        for (key, v) in img {
            a[(index[key], j)] += v;
        }
    }
    let mut rhs = vec![Rat::zero(); order.len()];
    for (key, v) in &block.rhs {
        rhs[index[key]] += v;
    }
    let sol = a.solve(&rhs);
    let mono = Poly::monomial(block.coeff_mono.clone(), Rat::one());
    let summands = columns
        .into_iter()
        .zip(sol.x)
        .filter(|(_, x)| !x.is_zero())
        .map(|((alpha, beta), x)| (alpha, beta, mono.scale(&x)))
        .collect();
    BlockSolution {
        consistent: sol.consistent,
        summands,
    }
}

fn assemble(n: usize, sols: Vec<BlockSolution>) -> BiDiffOp {
    let mut b = BiDiffOp::zero(n);
    for s in sols {
        for (alpha, beta, c) in s.summands {
            b.add_summand(alpha, beta, c);
        }
    }
    b
}

/// Hochschild coboundary of `∂^α⊗∂^β` (coefficient one):
/// `−Σ_{0<a<α} C(α,a) (a, α−a, β) + Σ_{0<b<β} C(β,b) (α, b, β−b)`.
fn coboundary(alpha: &Monomial, beta: &Monomial) -> Vec<(Key3, Rat)> {
    let mut out = Vec::new();
    for a in sub_monomials(alpha) {
        if a.degree() == 0 || a == *alpha {
            continue;
        }
        let rest = alpha.divide(&a).expect("sub-monomial");
        out.push(((a.clone(), rest, beta.clone()), -multi_binomial(alpha, &a)));
    }
    for b in sub_monomials(beta) {
        if b.degree() == 0 || b == *beta {
            continue;
        }
        let rest = beta.divide(&b).expect("sub-monomial");
        out.push(((alpha.clone(), b.clone(), rest), multi_binomial(beta, &b)));
    }
    out
}

fn multi_binomial(top: &Monomial, part: &Monomial) -> Rat {
    top.exps()
        .iter()
        .zip(part.exps())
        .map(|(&t, &p)| binomial(t, p))
        .fold(Rat::one(), |acc, x| acc * x)
}

/// All `μ ≤ σ` componentwise, ascending graded-lex.
fn sub_monomials(sigma: &Monomial) -> Vec<Monomial> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &e in sigma.exps() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=e).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    let mut monos: Vec<Monomial> = out.into_iter().map(Monomial::new).collect();
    monos.sort();
    monos
}
