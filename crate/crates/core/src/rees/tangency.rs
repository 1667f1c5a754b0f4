//! Tangency of a bracket to divisors: principal divisors in affine space and
//! the hyperplane at infinity of the standard projective compactification.

use crate::error::{Error, Result};
use crate::par::{IntoParallelIterator, ParallelIterator};
use crate::poly::{Bivector, Monomial, Poly};

/// Outcome for one chart `x_a ≠ 0` at infinity, with coordinates
/// `u₀ = 1/x_a` and `u_k = x_k/x_a` (`k ≠ a`, in increasing order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartReport {
    pub chart: usize,
    /// No negative powers of `u₀` occur in the transformed bivector.
    pub extends: bool,
    /// Every entry `γ̃^{0b}` is divisible by `u₀`.
    pub tangent: bool,
    /// Most negative `u₀`-exponent over all transformed entries.
    pub min_u0_exponent: Option<i64>,
    /// First entry `(p, q)` responsible for a failure.
    pub failing_entry: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangencyFailure {
    /// The bracket does not extend across the divisor at infinity.
    Extension,
    /// The bracket extends but the divisor is not preserved.
    Tangency,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyReport {
    pub charts: Vec<ChartReport>,
    pub quantizable: bool,
    pub failure: Option<TangencyFailure>,
}

/// A Laurent polynomial in `u₀` stored as `numer · u₀^{−shift}`.
struct Laurent {
    numer: Poly,
    shift: i64,
}

impl Laurent {
    fn min_exponent(&self) -> Option<i64> {
        self.numer.terms().map(|(m, _)| m.exp(0) as i64 - self.shift).min()
    }
}

fn chart_report(gamma: &Bivector, a: usize) -> ChartReport {
    let n = gamma.nvars();
    let shift = gamma.max_degree().unwrap_or(0) as i64;
    let others: Vec<usize> = (0..n).filter(|&k| k != a).collect();
    // Position of original variable k among new coordinates (u₀ is 0).
    let pos = |k: usize| 1 + others.iter().position(|&o| o == k).expect("other variable");
    let u = |p: usize| Poly::var(n, p);

    // x^e = u₀^{−|e|} Π_{k≠a} u_k^{e_k}; multiplied through by u₀^{shift}.
    let to_chart = |p: &Poly| -> Poly {
        let mut out = Poly::zero(n);
        for (m, c) in p.terms() {
            let mut exps = vec![0u32; n];
            exps[0] = (shift - m.degree() as i64) as u32;
            for &k in &others {
                exps[pos(k)] = m.exp(k);
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    };
    // ∂_i of each new coordinate, written in chart coordinates.
    let grad = |p: usize, i: usize| -> Poly {
        if p == 0 {
            if i == a {
                -&u(0).pow(2)
            } else {
                Poly::zero(n)
            }
        } else {
            let k = others[p - 1];
            if i == k {
                u(0)
            } else if i == a {
                -&(&u(p) * &u(0))
            } else {
                Poly::zero(n)
            }
        }
    };
    let entry = |p: usize, q: usize| -> Laurent {
        let mut acc = Poly::zero(n);
        for (&(i, j), g) in gamma.entries() {
            let gi = to_chart(g);
            let term = &(&grad(p, i) * &grad(q, j)) - &(&grad(p, j) * &grad(q, i));
            acc = &acc + &(&gi * &term);
        }
        Laurent { numer: acc, shift }
    };

    let mut extends = true;
    let mut tangent = true;
    let mut min_exp: Option<i64> = None;
    let mut failing = None;
    for p in 0..n {
        for q in p + 1..n {
            let e = entry(p, q);
            let Some(v) = e.min_exponent() else {
                continue;
            };
            min_exp = Some(min_exp.map_or(v, |m: i64| m.min(v)));
            if v < 0 && extends {
                extends = false;
                failing = Some((p, q));
            }
            if p == 0 && v < 1 && tangent {
                tangent = false;
                if extends {
                    failing = Some((p, q));
                }
            }
        }
    }
    ChartReport {
        chart: a,
        extends,
        tangent: tangent && extends,
        min_u0_exponent: min_exp,
        failing_entry: failing,
    }
}

/// Checks extension and tangency of `γ` along the hyperplane at infinity in
/// every standard chart of the projective compactification.
pub fn pn_tangency_check(gamma: &Bivector) -> TangencyReport {
    let n = gamma.nvars();
    let charts: Vec<ChartReport> = (0..n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| chart_report(gamma, a))
        .collect();
    let failure = if charts.iter().any(|c| !c.extends) {
        Some(TangencyFailure::Extension)
    } else if charts.iter().any(|c| !c.tangent) {
        Some(TangencyFailure::Tangency)
    } else {
        None
    };
    TangencyReport {
        quantizable: failure.is_none(),
        charts,
        failure,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisorVerdict {
    Tangent,
    NotTangent { coordinate: usize, remainder: Poly },
}

impl DivisorVerdict {
    pub fn is_tangent(&self) -> bool {
        matches!(self, DivisorVerdict::Tangent)
    }
}

/// Whether the principal ideal `(q)` is closed under the bracket, i.e.
/// `{q, x_i} ∈ (q)` for every coordinate.
pub fn ideal_tangency_check(gamma: &Bivector, q: &Poly) -> Result<DivisorVerdict> {
    if q.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let n = gamma.nvars();
    if q.nvars() != n {
        return Err(Error::NvarsMismatch(q.nvars(), n));
    }
    for i in 0..n {
        let br = gamma.bracket(q, &Poly::var(n, i))?;
        let (_, r) = br.div_rem(q)?;
        if !r.is_zero() {
            return Ok(DivisorVerdict::NotTangent {
                coordinate: i,
                remainder: r,
            });
        }
    }
    Ok(DivisorVerdict::Tangent)
}

/// Tangency of `γ` to the divisor `p = 0`.
pub fn divisor_tangency_check(gamma: &Bivector, p: &Poly) -> Result<DivisorVerdict> {
    ideal_tangency_check(gamma, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(p: Poly) -> Bivector {
        Bivector::from_entries(2, [(0, 1, p)]).unwrap()
    }

    #[test]
    fn constant_is_quantizable() {
        let r = pn_tangency_check(&plane(Poly::one(2)));
        assert!(r.quantizable);
        assert_eq!(r.charts.len(), 2);
    }

    #[test]
    fn cubic_central_fails_at_infinity() {
        let n = 3;
        let g = Bivector::from_entries(n, [(0, 1, Poly::var(n, 2).pow(3))]).unwrap();
        let r = pn_tangency_check(&g);
        assert!(!r.quantizable);
        // In the chart x₃ ≠ 0, {u₁, u₂} = u₀⁻¹.
        assert!(!r.charts[2].extends);
        assert_eq!(r.charts[2].min_u0_exponent, Some(-1));
    }

    #[test]
    fn cubic_in_plane_extends_but_is_not_tangent() {
        let r = pn_tangency_check(&plane(Poly::var(2, 0).pow(3)));
        assert!(r.charts[0].extends && !r.charts[0].tangent);
        assert_eq!(r.failure, Some(TangencyFailure::Tangency));
    }

    #[test]
    fn quartic_fails_extension() {
        let r = pn_tangency_check(&plane(Poly::var(2, 0).pow(4)));
        assert_eq!(r.failure, Some(TangencyFailure::Extension));
    }

    #[test]
    fn zero_is_quantizable() {
        assert!(pn_tangency_check(&Bivector::zero(3)).quantizable);
    }

    #[test]
    fn divisor_examples() {
        let x1 = Poly::var(2, 0);
        let v = divisor_tangency_check(&plane(Poly::one(2)), &x1).unwrap();
        assert_eq!(
            v,
            DivisorVerdict::NotTangent {
                coordinate: 1,
                remainder: Poly::one(2)
            }
        );
        assert!(divisor_tangency_check(&plane(x1.clone()), &x1).unwrap().is_tangent());
        assert!(divisor_tangency_check(&plane(Poly::one(2)), &Poly::one(2))
            .unwrap()
            .is_tangent());
        assert_eq!(
            divisor_tangency_check(&plane(x1), &Poly::zero(2)),
            Err(Error::ZeroDivisor)
        );
    }
}
