//! Exact multivariate polynomials over the rationals and the structures built
//! on them: truncated ℏ-series, polyvector fields and poly-differential
//! operators.

mod diffop;
mod monomial;
mod polyvector;
mod series;

pub use diffop::{BiDiffOp, TriDiffOp};
pub use monomial::Monomial;
pub use polyvector::{jacobi_check, schouten, Bivector, JacobiVerdict, PolyVector};
pub use series::HSeries;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{display_rat, Rat};

/// Sparse polynomial in `nvars` variables with rational coefficients.
///
/// Terms are kept in a map ordered by graded-lex monomial order; zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rat, Vec<u32>)>,
    {
        let mut p = Poly::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::NvarsMismatch(e.len(), nvars));
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Maximal total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::NvarsMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// `self += a·b` without materialising the product.
    pub fn add_mul(&mut self, a: &Poly, b: &Poly) {
        assert_eq!(a.nvars, b.nvars, "polynomial variable count mismatch");
        assert_eq!(self.nvars, a.nvars, "polynomial variable count mismatch");
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                self.add_term(m1.mul(m2), c1 * c2);
            }
        }
    }

    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative `∂_i`.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut exps = m.exps().to_vec();
                exps[i] -= 1;
                out.add_term(Monomial::new(exps), c * Rat::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Mixed partial derivative `∂^α`.
    pub fn partial_multi(&self, alpha: &Monomial) -> Poly {
        debug_assert_eq!(alpha.nvars(), self.nvars);
        if alpha.degree() == 0 {
            return self.clone();
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((rest, factor)) = m.differentiate(alpha) {
                out.add_term(rest, c * factor);
            }
        }
        out
    }

    /// Degree-`d` homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `x_i ↦ images[i]`; all images share a target variable count.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::NvarsMismatch(images.len(), self.nvars));
        }
        let target = images.first().map_or(0, Poly::nvars);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::NvarsMismatch(bad.nvars, target));
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::NvarsMismatch(point.len(), self.nvars));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Embeds into a ring with `extra` additional trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Division with remainder by a single polynomial under graded-lex order.
    /// Since a single polynomial is a Gröbner basis of the ideal it generates,
    /// the remainder is zero iff `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_nvars(divisor)?;
        let Some((lm, lc)) = divisor.leading_term() else {
            return Err(Error::ZeroDivisor);
        };
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut quotient = Poly::zero(self.nvars);
        let mut remainder = Poly::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            match m.divide(&lm) {
                Some(q) => {
                    let f = &c / &lc;
                    quotient.add_term(q.clone(), f.clone());
                    p = &p - &divisor.mul_monomial(&q, &f);
                }
                None => {
                    remainder.add_term(m.clone(), c);
                    p.terms.remove(&m);
                }
            }
        }
        Ok((quotient, remainder))
    }

    pub fn is_divisible_by(&self, divisor: &Poly) -> Result<bool> {
        Ok(self.div_rem(divisor)?.1.is_zero())
    }

    /// Formats with the given variable names, leading (largest) term first.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.to_string_with(names);
            if mono.is_empty() {
                out.push_str(&display_rat(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&display_rat(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Poly::default_names(self.nvars)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial variable count mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial variable count mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(2, 0), x(2, 1));
        let lhs = &(&a + &b) * &(&a - &b);
        assert_eq!(lhs, &(&a * &a) - &(&b * &b));
    }

    #[test]
    fn unit_and_monomial_products() {
        let f = &x(2, 0) + &Poly::constant(2, rat(3));
        assert_eq!(&Poly::one(2) * &f, f);
        let p = Poly::from_terms(2, [(rat(2), vec![2, 1])]).unwrap();
        let q = Poly::from_terms(2, [(rat(3), vec![0, 1])]).unwrap();
        assert_eq!(&p * &q, Poly::from_terms(2, [(rat(6), vec![2, 2])]).unwrap());
    }

    #[test]
    fn mismatched_nvars_is_an_error() {
        assert!(matches!(x(2, 0).try_mul(&x(3, 0)), Err(Error::NvarsMismatch(2, 3))));
    }

    #[test]
    fn partial_derivatives() {
        let f = Poly::from_terms(2, [(rat(1), vec![2, 1])]).unwrap();
        assert_eq!(
            f.partial(0).unwrap(),
            Poly::from_terms(2, [(rat(2), vec![1, 1])]).unwrap()
        );
        assert!(x(2, 0).partial(1).unwrap().is_zero());
        let cube = Poly::from_terms(1, [(rat(1), vec![3])]).unwrap();
        assert_eq!(
            cube.partial(0).unwrap(),
            Poly::from_terms(1, [(rat(3), vec![2])]).unwrap()
        );
        assert!(matches!(f.partial(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn division_detects_membership() {
        let p = &x(2, 0) + &x(2, 1);
        let f = &p * &(&x(2, 0) - &Poly::one(2));
        assert!(f.is_divisible_by(&p).unwrap());
        assert!(!(&f + &Poly::one(2)).is_divisible_by(&p).unwrap());
        assert!(f.div_rem(&Poly::zero(2)).is_err());
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let f = Poly::from_terms(2, [(rat(1), vec![0, 1]), (rat(-2), vec![2, 0]), (rat(3), vec![0, 0])]).unwrap();
        assert_eq!(f.to_string(), "-2*x1^2 + x2 + 3");
    }

    #[test]
    fn substitution_composes() {
        // f = x1*x2 with x1 -> y+1, x2 -> y-1 gives y^2-1.
        let f = &x(2, 0) * &x(2, 1);
        let y = Poly::var(1, 0);
        let g = f.substitute(&[&y + &Poly::one(1), &y - &Poly::one(1)]).unwrap();
        assert_eq!(g, &(&y * &y) - &Poly::one(1));
    }
}
