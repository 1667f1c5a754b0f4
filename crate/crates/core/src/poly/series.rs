use num_traits::Zero;

use super::Poly;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Polynomial-valued series in ℏ truncated above `ℏ^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HSeries {
    coeffs: Vec<Poly>,
}

impl HSeries {
    pub fn zero(nvars: usize, order: usize) -> Self {
        HSeries {
            coeffs: vec![Poly::zero(nvars); order + 1],
        }
    }

    /// A polynomial with no ℏ-dependence, viewed at the given order.
    pub fn from_poly(p: Poly, order: usize) -> Self {
        let mut s = Self::zero(p.nvars(), order);
        s.coeffs[0] = p;
        s
    }

    pub fn from_coeffs(coeffs: Vec<Poly>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Parse("empty ℏ-series".into()));
        };
        let n = first.nvars();
        if let Some(bad) = coeffs.iter().find(|p| p.nvars() != n) {
            return Err(Error::NvarsMismatch(bad.nvars(), n));
        }
        Ok(HSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.coeffs[0].nvars()
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Re-truncates (or zero-pads) to a new order.
    pub fn with_order(&self, order: usize) -> HSeries {
        let n = self.nvars();
        HSeries {
            coeffs: (0..=order)
                .map(|k| self.coeffs.get(k).cloned().unwrap_or_else(|| Poly::zero(n)))
                .collect(),
        }
    }

    pub fn try_sub(&self, other: &HSeries) -> Result<HSeries> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if self.nvars() != other.nvars() {
            return Err(Error::NvarsMismatch(self.nvars(), other.nvars()));
        }
        Ok(HSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_add(&self, other: &HSeries) -> Result<HSeries> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if self.nvars() != other.nvars() {
            return Err(Error::NvarsMismatch(self.nvars(), other.nvars()));
        }
        Ok(HSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Multiplication by a truncated scalar series `Σ s_k ℏ^k`.
    pub fn scale_series(&self, s: &[Rat]) -> HSeries {
        let n = self.nvars();
        let order = self.order();
        let mut out = HSeries::zero(n, order);
        for (i, si) in s.iter().enumerate().take(order + 1) {
            if si.is_zero() {
                continue;
            }
            for j in 0..=order - i {
                out.coeffs[i + j] = &out.coeffs[i + j] + &self.coeffs[j].scale(si);
            }
        }
        out
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| match k {
                0 => format!("({})", p.to_string_with(names)),
                1 => format!("hbar*({})", p.to_string_with(names)),
                _ => format!("hbar^{k}*({})", p.to_string_with(names)),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
