//! Bi- and tri-differential operators with polynomial coefficients.
//!
//! A bidifferential operator is `Σ c_{αβ} ∂^α ⊗ ∂^β`, acting by
//! `B(f,g) = Σ c_{αβ} (∂^α f)(∂^β g)`. Operators are kept in this normal form
//! (coefficients to the left), which is unique, so equality of operators is
//! equality of their summand maps.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::rational::{binomial, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiDiffOp {
    nvars: usize,
    summands: BTreeMap<(Monomial, Monomial), Poly>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriDiffOp {
    nvars: usize,
    summands: BTreeMap<(Monomial, Monomial, Monomial), Poly>,
}

impl BiDiffOp {
    pub fn zero(nvars: usize) -> Self {
        BiDiffOp {
            nvars,
            summands: BTreeMap::new(),
        }
    }

    /// The pointwise product `(f,g) ↦ fg`.
    pub fn multiplication(nvars: usize) -> Self {
        let mut b = Self::zero(nvars);
        b.add_summand(Monomial::one(nvars), Monomial::one(nvars), Poly::one(nvars));
        b
    }

    /// `Σ_{i,j} γ^{ij} ∂_i ⊗ ∂_j` for a bivector `γ`.
    pub fn pairing(gamma: &super::Bivector) -> Self {
        let n = gamma.nvars();
        let mut b = Self::zero(n);
        for (&(i, j), p) in gamma.entries() {
            b.add_summand(Monomial::var(n, i), Monomial::var(n, j), p.clone());
            b.add_summand(Monomial::var(n, j), Monomial::var(n, i), -p);
        }
        b
    }

    pub fn from_summands<I>(nvars: usize, summands: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Poly, Monomial, Monomial)>,
    {
        let mut b = Self::zero(nvars);
        for (c, a, bb) in summands {
            if c.nvars() != nvars || a.nvars() != nvars || bb.nvars() != nvars {
                return Err(Error::NvarsMismatch(c.nvars(), nvars));
            }
            b.add_summand(a, bb, c);
        }
        Ok(b)
    }

    pub fn add_summand(&mut self, alpha: Monomial, beta: Monomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.summands.entry((alpha, beta)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Summands `((α, β), coefficient)` in ascending key order.
    pub fn summands(&self) -> impl Iterator<Item = (&(Monomial, Monomial), &Poly)> {
        self.summands.iter()
    }

    pub fn add(&self, other: &BiDiffOp) -> BiDiffOp {
        let mut out = self.clone();
        for ((a, b), c) in &other.summands {
            out.add_summand(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> BiDiffOp {
        let mut out = BiDiffOp::zero(self.nvars);
        for ((a, b), c) in &self.summands {
            out.add_summand(a.clone(), b.clone(), c.scale(s));
        }
        out
    }

    /// Composition of constant-coefficient operators as symbols:
    /// `(∂^α⊗∂^β)·(∂^{α'}⊗∂^{β'}) = ∂^{α+α'}⊗∂^{β+β'}`. Only valid when the
    /// derivatives of each factor never reach the other's coefficients.
    pub fn symbol_mul(&self, other: &BiDiffOp) -> BiDiffOp {
        if self.has_constant_coefficients() && other.has_constant_coefficients() {
            return self.symbol_mul_constant(other);
        }
        let mut out = BiDiffOp::zero(self.nvars);
        for ((a1, b1), c1) in &self.summands {
            for ((a2, b2), c2) in &other.summands {
                let c = if c1.is_constant() {
                    c2.scale(&c1.constant_term())
                } else {
                    c1 * c2
                };
                out.add_summand(a1.mul(a2), b1.mul(b2), c);
            }
        }
        out
    }

    fn has_constant_coefficients(&self) -> bool {
        self.summands.values().all(Poly::is_constant)
    }

    fn symbol_mul_constant(&self, other: &BiDiffOp) -> BiDiffOp {
        let mut acc: HashMap<(Monomial, Monomial), Rat> = HashMap::new();
        for ((a1, b1), c1) in &self.summands {
            let c1 = c1.constant_term();
            for ((a2, b2), c2) in &other.summands {
                *acc.entry((a1.mul(a2), b1.mul(b2))).or_insert_with(Rat::zero) += &c1 * c2.constant_term();
            }
        }
        let n = self.nvars;
        BiDiffOp {
            nvars: n,
            summands: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, Poly::constant(n, c)))
                .collect(),
        }
    }

    /// `B(f, g) = Σ c (∂^α f)(∂^β g)`.
    pub fn apply(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        if f.nvars() != self.nvars {
            return Err(Error::NvarsMismatch(f.nvars(), self.nvars));
        }
        if g.nvars() != self.nvars {
            return Err(Error::NvarsMismatch(g.nvars(), self.nvars));
        }
        let (fdeg, gdeg) = match (f.degree(), g.degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(Poly::zero(self.nvars)),
        };
        // Summands are sorted by α, so each run shares one ∂^α f and the
        // products collapse to one per α.
        let mut gcache: HashMap<&Monomial, Poly> = HashMap::new();
        let mut acc = Poly::zero(self.nvars);
        let mut current: Option<(&Monomial, Poly, Poly)> = None;
        for ((a, b), c) in &self.summands {
            if a.degree() > fdeg || b.degree() > gdeg {
                continue;
            }
            if current.as_ref().is_none_or(|(ca, _, _)| *ca != a) {
                if let Some((_, df, inner)) = current.take() {
                    acc.add_mul(&df, &inner);
                }
                let df = f.partial_multi(a);
                current = Some((a, df, Poly::zero(self.nvars)));
            }
            let (_, df, inner) = current.as_mut().expect("set above");
            if df.is_zero() {
                continue;
            }
            let dg = gcache.entry(b).or_insert_with(|| g.partial_multi(b));
            if dg.is_zero() {
                continue;
            }
            inner.add_mul(c, dg);
        }
        if let Some((_, df, inner)) = current {
            acc.add_mul(&df, &inner);
        }
        Ok(acc)
    }

    /// `(f, g, h) ↦ B(B'(f, g), h)`.
    pub fn compose_left(&self, inner: &BiDiffOp) -> TriDiffOp {
        let mut out = TriDiffOp::zero(self.nvars);
        for ((alpha, beta), c) in &self.summands {
            for ((a_in, b_in), c_in) in &inner.summands {
                for (s, factor) in leibniz_splits(alpha) {
                    let dc = c_in.partial_multi(&s[0]);
                    if dc.is_zero() {
                        continue;
                    }
                    let coeff = (c * &dc).scale(&factor);
                    out.add_summand(a_in.mul(&s[1]), b_in.mul(&s[2]), beta.clone(), coeff);
                }
            }
        }
        out
    }

    /// `(f, g, h) ↦ B(f, B'(g, h))`.
    pub fn compose_right(&self, inner: &BiDiffOp) -> TriDiffOp {
        let mut out = TriDiffOp::zero(self.nvars);
        for ((alpha, beta), c) in &self.summands {
            for ((a_in, b_in), c_in) in &inner.summands {
                for (s, factor) in leibniz_splits(beta) {
                    let dc = c_in.partial_multi(&s[0]);
                    if dc.is_zero() {
                        continue;
                    }
                    let coeff = (c * &dc).scale(&factor);
                    out.add_summand(alpha.clone(), a_in.mul(&s[1]), b_in.mul(&s[2]), coeff);
                }
            }
        }
        out
    }
}

impl TriDiffOp {
    pub fn zero(nvars: usize) -> Self {
        TriDiffOp {
            nvars,
            summands: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> impl Iterator<Item = (&(Monomial, Monomial, Monomial), &Poly)> {
        self.summands.iter()
    }

    pub fn coeff(&self, a: &Monomial, b: &Monomial, d: &Monomial) -> Poly {
        self.summands
            .get(&(a.clone(), b.clone(), d.clone()))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn add_summand(&mut self, a: Monomial, b: Monomial, d: Monomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        let key = (a, b, d);
        let merged = match self.summands.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.summands.insert(key, merged);
        }
    }

    pub fn add(&self, other: &TriDiffOp) -> TriDiffOp {
        let mut out = self.clone();
        for ((a, b, d), c) in &other.summands {
            out.add_summand(a.clone(), b.clone(), d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TriDiffOp) -> TriDiffOp {
        let mut out = self.clone();
        for ((a, b, d), c) in &other.summands {
            out.add_summand(a.clone(), b.clone(), d.clone(), -c);
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> TriDiffOp {
        let mut out = TriDiffOp::zero(self.nvars);
        for ((a, b, d), c) in &self.summands {
            out.add_summand(a.clone(), b.clone(), d.clone(), c.scale(s));
        }
        out
    }

    pub fn apply(&self, f: &Poly, g: &Poly, h: &Poly) -> Result<Poly> {
        for p in [f, g, h] {
            if p.nvars() != self.nvars {
                return Err(Error::NvarsMismatch(p.nvars(), self.nvars));
            }
        }
        let mut acc = Poly::zero(self.nvars);
        for ((a, b, d), c) in &self.summands {
            let df = f.partial_multi(a);
            if df.is_zero() {
                continue;
            }
            let dg = g.partial_multi(b);
            if dg.is_zero() {
                continue;
            }
            let dh = h.partial_multi(d);
            acc.add_mul(&(&(c * &df) * &dg), &dh);
        }
        Ok(acc)
    }
}

/// All ways of writing `alpha = s0 + s1 + s2` with multinomial weights
/// `Π_v α_v! / (s0_v! s1_v! s2_v!)`.
pub(crate) fn leibniz_splits(alpha: &Monomial) -> Vec<([Monomial; 3], Rat)> {
    let n = alpha.nvars();
    let mut out = Vec::new();
    let mut parts = vec![[0u32; 3]; n];
    fn rec(v: usize, alpha: &Monomial, parts: &mut Vec<[u32; 3]>, weight: Rat, out: &mut Vec<([Monomial; 3], Rat)>) {
        if v == alpha.nvars() {
            let pick = |k: usize| Monomial::new(parts.iter().map(|p| p[k]).collect());
            out.push(([pick(0), pick(1), pick(2)], weight));
            return;
        }
        let e = alpha.exp(v);
        for a in 0..=e {
            for b in 0..=e - a {
                let c = e - a - b;
                parts[v] = [a, b, c];
                let w = &weight * binomial(e, a) * binomial(e - a, b);
                rec(v + 1, alpha, parts, w, out);
            }
        }
    }
    rec(0, alpha, &mut parts, Rat::from_integer(1.into()), &mut out);
    debug_assert!(out.iter().all(|(_, w)| !w.is_zero()));
    out
}
