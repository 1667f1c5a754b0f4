//! Star products as truncated ℏ-series of bidifferential operators.
//!
//! `f * g = Σ_k ℏ^k B_k(f, g)` with `B₀` the pointwise product and
//! `B₁ = Σ_{i,j} γ^{ij} ∂_i ⊗ ∂_j`. Associativity modulo `ℏ^{N+1}` is the
//! vanishing of the tridifferential residuals
//! `Σ_{i+j=k} B_i(B_j(·,·),·) − B_i(·,B_j(·,·))` for `k ≤ N`.

mod solver;

pub use solver::{star_solve, AnsatzSpec, Obstruction, SolveOutcome};

use crate::error::{Error, Result};
use crate::poly::{BiDiffOp, Bivector, HSeries, Monomial, Poly, PolyVector, TriDiffOp};
use crate::rational::{factorial, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StarProduct {
    nvars: usize,
    ops: Vec<BiDiffOp>,
}

impl StarProduct {
    /// Wraps `B₀ … B_N`. `B₀` must be the pointwise product and every later
    /// operator must differentiate both slots (so `1` stays a two-sided unit).
    pub fn from_ops(ops: Vec<BiDiffOp>) -> Result<Self> {
        let Some(b0) = ops.first() else {
            return Err(Error::InvalidData("star product needs at least B0".into()));
        };
        let n = b0.nvars();
        if *b0 != BiDiffOp::multiplication(n) {
            return Err(Error::InvalidData("B0 is not the pointwise product".into()));
        }
        for (k, b) in ops.iter().enumerate().skip(1) {
            if b.nvars() != n {
                return Err(Error::NvarsMismatch(b.nvars(), n));
            }
            if b.summands().any(|((a, bb), _)| a.degree() == 0 || bb.degree() == 0) {
                return Err(Error::InvalidData(format!("B{k} is not unital")));
            }
        }
        Ok(StarProduct { nvars: n, ops })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.ops.len() - 1
    }

    pub fn ops(&self) -> &[BiDiffOp] {
        &self.ops
    }

    pub fn op(&self, k: usize) -> &BiDiffOp {
        &self.ops[k]
    }

    /// Truncates to a lower order.
    pub fn truncate(&self, order: usize) -> StarProduct {
        StarProduct {
            nvars: self.nvars,
            ops: self.ops[..=order.min(self.order())].to_vec(),
        }
    }

    /// Product of two polynomials as a series truncated at the product's order.
    pub fn multiply_polys(&self, f: &Poly, g: &Poly) -> Result<HSeries> {
        let coeffs = self.ops.iter().map(|b| b.apply(f, g)).collect::<Result<Vec<_>>>()?;
        HSeries::from_coeffs(coeffs)
    }

    /// Every summand `c ∂^α⊗∂^β` has `c` homogeneous of degree `|α|+|β|`, so
    /// `Sym^a ⊗ Sym^b` lands in `Sym^{a+b}`.
    pub fn is_degree_preserving(&self) -> bool {
        self.ops.iter().all(|b| {
            b.summands().all(|((a, bb), c)| {
                let d = a.degree() + bb.degree();
                c.degree() == Some(d) && c.min_degree() == Some(d)
            })
        })
    }
}

/// Exact Moyal product `exp(ℏ Σ γ^{ij} ∂_i⊗∂_j)` truncated at order `order`.
pub fn moyal(gamma: &Bivector, order: usize) -> Result<StarProduct> {
    if let Some((&(i, j), _)) = gamma.entries().find(|(_, p)| !p.is_constant()) {
        return Err(Error::NonConstant(i, j));
    }
    let n = gamma.nvars();
    let b1 = BiDiffOp::pairing(gamma);
    let mut ops = vec![BiDiffOp::multiplication(n)];
    let mut power = BiDiffOp::multiplication(n);
    for k in 1..=order {
        power = power.symbol_mul(&b1);
        ops.push(power.scale(&factorial(k).recip()));
    }
    Ok(StarProduct { nvars: n, ops })
}

/// `exp(ℏ Σ γ^{ij} ∂_i⊗∂_j)` for a bivector whose coefficients only involve
/// variables that no entry differentiates along, e.g. `{x₁,x₂} = P(x₃)`.
/// Derivatives never reach the coefficients, so the series is exactly
/// associative just as in the constant case.
pub fn moyal_central(gamma: &Bivector, order: usize) -> Result<StarProduct> {
    let n = gamma.nvars();
    let mut active = vec![false; n];
    for (&(i, j), _) in gamma.entries() {
        active[i] = true;
        active[j] = true;
    }
    for (&(i, j), p) in gamma.entries() {
        if p.terms().any(|(m, _)| (0..n).any(|v| active[v] && m.exp(v) > 0)) {
            return Err(Error::NonConstant(i, j));
        }
    }
    let b1 = BiDiffOp::pairing(gamma);
    let mut ops = vec![BiDiffOp::multiplication(n)];
    let mut power = BiDiffOp::multiplication(n);
    for k in 1..=order {
        power = power.symbol_mul(&b1);
        ops.push(power.scale(&factorial(k).recip()));
    }
    Ok(StarProduct { nvars: n, ops })
}

/// `f * g = Σ_k ℏ^k Σ_{i+j+l=k} B_i(f_j, g_l)`, truncated at the product's order.
pub fn star_multiply(s: &StarProduct, f: &HSeries, g: &HSeries) -> Result<HSeries> {
    let n = s.nvars;
    if f.nvars() != n {
        return Err(Error::NvarsMismatch(f.nvars(), n));
    }
    if g.nvars() != n {
        return Err(Error::NvarsMismatch(g.nvars(), n));
    }
    let order = s.order();
    if f.order() < order || g.order() < order {
        return Err(Error::OrderMismatch(f.order().min(g.order()), order));
    }
    let mut out = vec![Poly::zero(n); order + 1];
    for (i, b) in s.ops.iter().enumerate() {
        for j in 0..=order - i {
            let fj = f.coeff(j);
            if fj.is_zero() {
                continue;
            }
            for l in 0..=order - i - j {
                let gl = g.coeff(l);
                if gl.is_zero() {
                    continue;
                }
                let t = b.apply(fj, gl)?;
                out[i + j + l] = &out[i + j + l] + &t;
            }
        }
    }
    HSeries::from_coeffs(out)
}

fn check_residual_order(s: &StarProduct, k: usize) -> Result<()> {
    if k > s.order() {
        Err(Error::OrderMismatch(k, s.order()))
    } else {
        Ok(())
    }
}

/// `Σ_{i+j=k} [B_i(B_j(·,·),·) − B_i(·,B_j(·,·))]` as a tridifferential operator.
pub fn assoc_residual(s: &StarProduct, k: usize) -> Result<TriDiffOp> {
    check_residual_order(s, k)?;
    Ok(residual_from_ops(&s.ops, k))
}

pub(crate) fn residual_from_ops(ops: &[BiDiffOp], k: usize) -> TriDiffOp {
    let n = ops[0].nvars();
    let mut acc = TriDiffOp::zero(n);
    for i in 0..=k {
        let (bi, bj) = (&ops[i], &ops[k - i]);
        if bi.is_zero() || bj.is_zero() {
            continue;
        }
        acc = acc.add(&bi.compose_left(bj)).sub(&bi.compose_right(bj));
    }
    acc
}

/// The order-`k` associativity residual evaluated on a concrete triple.
pub fn assoc_residual_on(s: &StarProduct, k: usize, f: &Poly, g: &Poly, h: &Poly) -> Result<Poly> {
    check_residual_order(s, k)?;
    let n = s.nvars;
    let mut acc = Poly::zero(n);
    for i in 0..=k {
        let (bi, bj) = (&s.ops[i], &s.ops[k - i]);
        let left = bi.apply(&bj.apply(f, g)?, h)?;
        let right = bi.apply(f, &bj.apply(g, h)?)?;
        acc += &left;
        acc -= &right;
    }
    Ok(acc)
}

/// Antisymmetrizes a tridifferential operator over its three slots and keeps
/// the summands with exactly one derivative per slot, read as a trivector.
/// No `1/3!` normalisation is applied: the component at `(a,b,c)` is
/// `Σ_π sgn(π) R(x_{π a}, x_{π b}, x_{π c})`.
pub fn hkr_class(r: &TriDiffOp) -> PolyVector {
    let n = r.nvars();
    let mut comps: Vec<(Vec<usize>, Poly)> = Vec::new();
    for ((a, b, d), c) in r.summands() {
        if a.degree() != 1 || b.degree() != 1 || d.degree() != 1 {
            continue;
        }
        let idx = [single_var(a), single_var(b), single_var(d)];
        if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
            continue;
        }
        comps.push((idx.to_vec(), c.clone()));
    }
    if n < 3 {
        return PolyVector::zero(n, 3.min(n));
    }
    PolyVector::from_components(n, 3, comps).expect("distinct indices in range")
}

fn single_var(m: &Monomial) -> usize {
    m.exps().iter().position(|&e| e == 1).expect("degree-one monomial")
}

/// Commutator `x_i * x_j − x_j * x_i` as an ℏ-series.
pub fn generator_commutator(s: &StarProduct, i: usize, j: usize) -> Result<HSeries> {
    let n = s.nvars;
    let (xi, xj) = (Poly::var(n, i), Poly::var(n, j));
    s.multiply_polys(&xi, &xj)?.try_sub(&s.multiply_polys(&xj, &xi)?)
}

/// Scales every `B_k` by `λ^k` (the substitution `ℏ ↦ λℏ`).
pub fn rescale_hbar(s: &StarProduct, lambda: &Rat) -> StarProduct {
    let mut pow = Rat::from_integer(1.into());
    let mut ops = Vec::with_capacity(s.ops.len());
    for b in &s.ops {
        ops.push(b.scale(&pow));
        pow *= lambda;
    }
    StarProduct { nvars: s.nvars, ops }
}
