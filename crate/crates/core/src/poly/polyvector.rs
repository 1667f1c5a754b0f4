//! Polyvector fields with polynomial coefficients and the Schouten bracket.
//!
//! A `k`-vector is stored as `Σ_I P_I ∂_{i1}∧…∧∂_{ik}` over strictly
//! increasing index tuples `I`. It evaluates on one-forms by the determinant
//! rule `P(df_1,…,df_k) = Σ_I P_I det[∂_{i_a} f_b]`.
//!
//! Internally the bracket treats `∂_i` as an odd variable `ξ_i`:
//!
//! `[P,Q] = Σ_i (∂P/∂ξ_i)(∂Q/∂x_i) − (−1)^{(p−1)(q−1)} (∂Q/∂ξ_i)(∂P/∂x_i)`
//!
//! with left odd derivatives. For a bivector this gives
//! `[γ,γ](df,dg,dh) = 2·Jacobiator(f,g,h)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::Poly;
use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVector {
    nvars: usize,
    degree: usize,
    components: BTreeMap<Vec<usize>, Poly>,
}

impl PolyVector {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        PolyVector {
            nvars,
            degree,
            components: BTreeMap::new(),
        }
    }

    /// Builds a polyvector from components keyed by index tuples. Tuples may be
    /// in any order; they are sorted with the permutation sign applied, and
    /// tuples with a repeated index are rejected.
    pub fn from_components<I>(nvars: usize, degree: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        if degree > nvars {
            return Err(Error::DegreeOverflow(degree, nvars));
        }
        let mut out = PolyVector::zero(nvars, degree);
        for (idx, p) in comps {
            if idx.len() != degree {
                return Err(Error::Parse(format!(
                    "index tuple {idx:?} does not have length {degree}"
                )));
            }
            if p.nvars() != nvars {
                return Err(Error::NvarsMismatch(p.nvars(), nvars));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= nvars) {
                return Err(Error::IndexOutOfRange { index: bad, nvars });
            }
            let Some((sorted, sign)) = sort_with_sign(&idx) else {
                return Err(Error::Parse(format!("repeated index in {idx:?}")));
            };
            out.add_component(sorted, if sign { -p } else { p });
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.components.iter()
    }

    pub fn component(&self, idx: &[usize]) -> Poly {
        self.components
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    fn add_component(&mut self, idx: Vec<usize>, p: Poly) {
        if p.is_zero() {
            return;
        }
        let merged = match self.components.remove(&idx) {
            Some(old) => &old + &p,
            None => p,
        };
        if !merged.is_zero() {
            self.components.insert(idx, merged);
        }
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let mut out = self.clone();
        for (idx, p) in &other.components {
            out.add_component(idx.clone(), p.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> PolyVector {
        let mut out = PolyVector::zero(self.nvars, self.degree);
        if s.is_zero() {
            return out;
        }
        for (idx, p) in &self.components {
            out.components.insert(idx.clone(), p.scale(s));
        }
        out
    }

    /// Wedge product.
    pub fn wedge(&self, other: &PolyVector) -> PolyVector {
        let mut out = PolyVector::zero(self.nvars, self.degree + other.degree);
        for (i, p) in &self.components {
            for (j, q) in &other.components {
                if let Some((idx, negative)) = merge_with_sign(i, j) {
                    let prod = p * q;
                    out.add_component(idx, if negative { -prod } else { prod });
                }
            }
        }
        out
    }

    /// Left derivative with respect to the odd variable `ξ_i = ∂_i`.
    fn odd_derivative(&self, i: usize) -> PolyVector {
        let mut out = PolyVector::zero(self.nvars, self.degree.saturating_sub(1));
        for (idx, p) in &self.components {
            if let Some(pos) = idx.iter().position(|&v| v == i) {
                let mut rest = idx.clone();
                rest.remove(pos);
                out.add_component(rest, if pos % 2 == 1 { -p } else { p.clone() });
            }
        }
        out
    }

    fn coordinate_derivative(&self, i: usize) -> PolyVector {
        let mut out = PolyVector::zero(self.nvars, self.degree);
        for (idx, p) in &self.components {
            out.add_component(idx.clone(), p.partial(i).expect("index in range"));
        }
        out
    }

    /// Evaluates on the differentials of `forms` (one per slot).
    pub fn evaluate(&self, forms: &[Poly]) -> Result<Poly> {
        if forms.len() != self.degree {
            return Err(Error::Parse(format!(
                "expected {} arguments, got {}",
                self.degree,
                forms.len()
            )));
        }
        let grads: Vec<Vec<Poly>> = forms
            .iter()
            .map(|f| (0..self.nvars).map(|i| f.partial(i)).collect())
            .collect::<Result<_>>()?;
        let mut acc = Poly::zero(self.nvars);
        for (idx, p) in &self.components {
            let mut det = Poly::zero(self.nvars);
            for (perm, negative) in permutations_with_sign(self.degree) {
                let mut term = Poly::one(self.nvars);
                for (slot, &row) in perm.iter().enumerate() {
                    term = &term * &grads[slot][idx[row]];
                    if term.is_zero() {
                        break;
                    }
                }
                det = if negative { &det - &term } else { &det + &term };
            }
            acc = &acc + &(p * &det);
        }
        Ok(acc)
    }
}

/// Schouten–Nijenhuis bracket `[P,Q]`, a polyvector of degree `p+q−1`.
pub fn schouten(p: &PolyVector, q: &PolyVector) -> Result<PolyVector> {
    if p.nvars != q.nvars {
        return Err(Error::NvarsMismatch(p.nvars, q.nvars));
    }
    let n = p.nvars;
    let (dp, dq) = (p.degree, q.degree);
    if dp + dq == 0 {
        return Ok(PolyVector::zero(n, 0));
    }
    if dp + dq - 1 > n {
        return Err(Error::DegreeOverflow(dp + dq - 1, n));
    }
    let subtract = ((dp as isize - 1) * (dq as isize - 1)) % 2 == 0;
    let mut out = PolyVector::zero(n, dp + dq - 1);
    for i in 0..n {
        let first = p.odd_derivative(i).wedge(&q.coordinate_derivative(i));
        let second = q.odd_derivative(i).wedge(&p.coordinate_derivative(i));
        let mut first = fix_degree(first, dp + dq - 1);
        let second = fix_degree(second, dp + dq - 1);
        // (−1)^{(p−1)(q−1)} = +1 → subtract; −1 → add.
        if subtract {
            first = first.add(&second.scale(&Rat::from_integer((-1).into())));
        } else {
            first = first.add(&second);
        }
        out = out.add(&first);
    }
    Ok(out)
}

fn fix_degree(mut v: PolyVector, degree: usize) -> PolyVector {
    if v.is_zero() {
        v.degree = degree;
    }
    v
}

/// Antisymmetric bivector `γ = Σ γ^{ij} ∂_i∧∂_j`, stored for `i < j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bivector {
    nvars: usize,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl Bivector {
    pub fn zero(nvars: usize) -> Self {
        Bivector {
            nvars,
            entries: BTreeMap::new(),
        }
    }

    /// Builds from `(i, j, γ^{ij})` triples; pairs with `i > j` are stored as
    /// `γ^{ji} = −γ^{ij}`, and `i == j` is rejected.
    pub fn from_entries<I>(nvars: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Poly)>,
    {
        let mut b = Bivector::zero(nvars);
        for (i, j, p) in entries {
            b.add_entry(i, j, p)?;
        }
        Ok(b)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, p: Poly) -> Result<()> {
        if i >= self.nvars || j >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                nvars: self.nvars,
            });
        }
        if p.nvars() != self.nvars {
            return Err(Error::NvarsMismatch(p.nvars(), self.nvars));
        }
        if i == j {
            return Err(Error::Parse(format!("diagonal bivector entry ({i},{i})")));
        }
        let (key, p) = if i < j { ((i, j), p) } else { ((j, i), -p) };
        let merged = match self.entries.remove(&key) {
            Some(old) => &old + &p,
            None => p,
        };
        if !merged.is_zero() {
            self.entries.insert(key, merged);
        }
        Ok(())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Stored upper-triangular entries.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly)> {
        self.entries.iter()
    }

    /// Full antisymmetric matrix entry `γ^{ij}`.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self
                .entries
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| Poly::zero(self.nvars)),
            std::cmp::Ordering::Greater => -self.get(j, i),
            std::cmp::Ordering::Equal => Poly::zero(self.nvars),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest total degree among the coefficients (`None` when `γ = 0`).
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.values().filter_map(Poly::degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.entries.values().all(Poly::is_constant)
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.entries
            .values()
            .all(|p| p.degree() == Some(d) && p.min_degree() == Some(d))
    }

    pub fn scale(&self, s: &Rat) -> Bivector {
        Bivector {
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .map(|(k, p)| (*k, p.scale(s)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    /// `{f, g} = Σ_{i,j} γ^{ij} ∂_i f ∂_j g`.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        if f.nvars() != self.nvars || g.nvars() != self.nvars {
            return Err(Error::NvarsMismatch(f.nvars().max(g.nvars()), self.nvars));
        }
        let df: Vec<Poly> = (0..self.nvars).map(|i| f.partial(i)).collect::<Result<_>>()?;
        let dg: Vec<Poly> = (0..self.nvars).map(|i| g.partial(i)).collect::<Result<_>>()?;
        let mut acc = Poly::zero(self.nvars);
        for (&(i, j), p) in &self.entries {
            let t = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
            if !t.is_zero() {
                acc = &acc + &(p * &t);
            }
        }
        Ok(acc)
    }

    pub fn to_polyvector(&self) -> PolyVector {
        PolyVector {
            nvars: self.nvars,
            degree: 2,
            components: self
                .entries
                .iter()
                .map(|(&(i, j), p)| (vec![i, j], p.clone()))
                .collect(),
        }
    }

    pub fn from_polyvector(v: &PolyVector) -> Result<Bivector> {
        if v.degree != 2 {
            return Err(Error::Parse(format!("expected a bivector, got degree {}", v.degree)));
        }
        Bivector::from_entries(v.nvars, v.components.iter().map(|(idx, p)| (idx[0], idx[1], p.clone())))
    }

    /// Applies a polynomial map to every coefficient (e.g. substitution).
    pub fn map_entries<F>(&self, nvars: usize, mut f: F) -> Result<Bivector>
    where
        F: FnMut(&Poly) -> Result<Poly>,
    {
        let mut out = Bivector::zero(nvars);
        for (&(i, j), p) in &self.entries {
            out.add_entry(i, j, f(p)?)?;
        }
        Ok(out)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum JacobiVerdict {
    Pass,
    /// The nonzero Schouten square `[γ,γ]`.
    Fail(PolyVector),
}

impl JacobiVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, JacobiVerdict::Pass)
    }
}

/// Passes iff `[γ,γ] = 0`.
pub fn jacobi_check(gamma: &Bivector) -> JacobiVerdict {
    if gamma.nvars < 3 {
        return JacobiVerdict::Pass;
    }
    let p = gamma.to_polyvector();
    let sq = schouten(&p, &p).expect("degree 3 fits when nvars >= 3");
    if sq.is_zero() {
        JacobiVerdict::Pass
    } else {
        JacobiVerdict::Fail(sq)
    }
}

/// Sorts an index tuple, returning whether the permutation is odd; `None` when
/// an index repeats.
fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            match v[j].cmp(&v[j + 1]) {
                std::cmp::Ordering::Greater => {
                    v.swap(j, j + 1);
                    odd = !odd;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

fn merge_with_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut joined = a.to_vec();
    joined.extend_from_slice(b);
    sort_with_sign(&joined)
}

fn permutations_with_sign(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let odd = sort_with_sign(&p).map(|(_, s)| s).unwrap_or(false);
            (p, odd)
        })
        .collect()
}
