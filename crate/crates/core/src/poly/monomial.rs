use std::cmp::Ordering;

use crate::rational::Rat;

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// the exponent of `x1`, then `x2`, and so on (a larger exponent is larger).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `∂^alpha` of this monomial: the remaining monomial and the falling
    /// factorial factor, or `None` when the derivative vanishes.
    pub fn differentiate(&self, alpha: &Monomial) -> Option<(Monomial, Rat)> {
        let rest = self.divide(alpha)?;
        let mut factor = 1u64;
        let mut big = Rat::from_integer(1.into());
        for (&e, &a) in self.0.iter().zip(&alpha.0) {
            for t in 0..a {
                let v = u64::from(e - t);
                match factor.checked_mul(v) {
                    Some(f) => factor = f,
                    None => {
                        big *= Rat::from_integer(factor.into());
                        factor = v;
                    }
                }
            }
        }
        Some((rest, big * Rat::from_integer(factor.into())))
    }

    /// `alpha!` as a rational.
    pub fn factorial(&self) -> Rat {
        self.0
            .iter()
            .map(|&e| crate::rational::factorial(e as usize))
            .fold(Rat::from_integer(1.into()), |a, b| a * b)
    }

    pub fn extend(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }

    /// All exponent vectors of exactly total degree `d`, ascending graded-lex.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; nvars];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All exponent vectors of total degree `lo..=hi`, ascending graded-lex.
    pub fn all_in_degrees(nvars: usize, lo: u32, hi: u32) -> Vec<Monomial> {
        (lo..=hi).flat_map(|d| Monomial::all_of_degree(nvars, d)).collect()
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![0, 2]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![3, 0]);
        assert!(a < b && b < c);
        assert!(Monomial::new(vec![0, 0, 1]) < Monomial::new(vec![1, 0, 0]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_in_degrees(2, 0, 3).len(), 10);
        let v = Monomial::all_of_degree(2, 2);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn falling_factorials() {
        let m = Monomial::new(vec![3, 2]);
        let (rest, f) = m.differentiate(&Monomial::new(vec![2, 1])).unwrap();
        assert_eq!(rest, Monomial::new(vec![1, 1]));
        assert_eq!(f, rat(12));
        assert!(m.differentiate(&Monomial::new(vec![4, 0])).is_none());
    }
}
