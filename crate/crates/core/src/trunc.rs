//! The ring `Q[ℏ]/(ℏ^{N+1})` and matrices over it.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{display_rat, factorial, Rat};

/// An element `Σ_{k≤N} c_k ℏ^k`. Arithmetic requires equal orders.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Trunc {
    coeffs: Vec<Rat>,
}

impl Trunc {
    pub fn zero(order: usize) -> Self {
        Trunc {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::scalar(order, Rat::one())
    }

    pub fn scalar(order: usize, c: Rat) -> Self {
        let mut t = Self::zero(order);
        t.coeffs[0] = c;
        t
    }

    /// `c ℏ^k`, or zero if `k` exceeds the order.
    pub fn monomial(order: usize, k: usize, c: Rat) -> Self {
        let mut t = Self::zero(order);
        if k <= order {
            t.coeffs[k] = c;
        }
        t
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("empty truncated series".into()));
        }
        Ok(Trunc { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Units are exactly the elements with nonzero constant term.
    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// Lowest `k` with `c_k ≠ 0`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Trunc) -> Trunc {
        debug_assert_eq!(self.order(), other.order());
        Trunc {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Trunc) -> Trunc {
        debug_assert_eq!(self.order(), other.order());
        Trunc {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Trunc {
        Trunc {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Trunc {
        Trunc {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Trunc) -> Trunc {
        debug_assert_eq!(self.order(), other.order());
        let n = self.order();
        let mut out = Trunc::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Trunc> {
        if !self.is_unit() {
            return Err(Error::NotInvertible("constant term is zero".into()));
        }
        let n = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut out = Trunc::zero(n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rat::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -acc * &inv0;
        }
        Ok(out)
    }

    /// `exp(x)` for `x` with zero constant term.
    pub fn exp(&self) -> Result<Trunc> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidData("exp needs a zero constant term".into()));
        }
        let n = self.order();
        let mut out = Trunc::one(n);
        let mut power = Trunc::one(n);
        for m in 1..=n {
            power = power.mul(self);
            out = out.add(&power.scale(&factorial(m).recip()));
        }
        Ok(out)
    }

    /// The substitution `ℏ ↦ λℏ`.
    pub fn rescale(&self, lambda: &Rat) -> Trunc {
        let mut pow = Rat::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &pow);
            pow *= lambda;
        }
        Trunc { coeffs }
    }

    /// Re-truncates or zero-pads to another order.
    pub fn with_order(&self, order: usize) -> Trunc {
        Trunc {
            coeffs: (0..=order)
                .map(|k| self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero))
                .collect(),
        }
    }
}

impl fmt::Display for Trunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let abs = display_rat(&c.abs());
            match k {
                0 => write!(f, "{sign}{abs}")?,
                1 => write!(f, "{sign}{abs}*hbar")?,
                _ => write!(f, "{sign}{abs}*hbar^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dense matrix over the truncated ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TMatrix {
    rows: usize,
    cols: usize,
    order: usize,
    data: Vec<Trunc>,
}

impl TMatrix {
    pub fn zeros(rows: usize, cols: usize, order: usize) -> Self {
        TMatrix {
            rows,
            cols,
            order,
            data: vec![Trunc::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: usize) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m[(i, i)] = Trunc::one(order);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Trunc>>, order: usize) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidData("ragged matrix".into()));
            }
            for t in row {
                if t.order() != order {
                    return Err(Error::OrderMismatch(t.order(), order));
                }
                data.push(t);
            }
        }
        Ok(TMatrix {
            rows: r,
            cols: c,
            order,
            data,
        })
    }

    /// Assembles `Σ_k ℏ^k M_k` from rational matrices of equal shape.
    pub fn from_coefficients(mats: &[QMatrix]) -> TMatrix {
        let order = mats.len() - 1;
        let (r, c) = (mats[0].rows(), mats[0].cols());
        let mut out = TMatrix::zeros(r, c, order);
        for (k, m) in mats.iter().enumerate() {
            for i in 0..r {
                for j in 0..c {
                    out[(i, j)].coeffs[k] = m[(i, j)].clone();
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn row(&self, i: usize) -> &[Trunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Trunc>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The rational matrix of `ℏ^k` coefficients.
    pub fn coefficient(&self, k: usize) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].coeffs[k].clone();
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let t = &self[(i, j)];
                    if i == j {
                        t.is_one()
                    } else {
                        t.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &TMatrix) -> TMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = TMatrix::zeros(self.rows, other.cols, self.order);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.mul(&other[(l, j)]);
                    out[(i, j)] = out[(i, j)].add(&p);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &TMatrix) -> TMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &TMatrix) -> TMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.sub(b);
        }
        out
    }

    pub fn scale(&self, s: &Trunc) -> TMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(s);
        }
        out
    }

    pub fn rescale(&self, lambda: &Rat) -> TMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.rescale(lambda);
        }
        out
    }

    /// Order-by-order inverse: `X₀ = A₀⁻¹`, `X_k = −A₀⁻¹ Σ_{i≥1} A_i X_{k−i}`.
    pub fn inverse(&self) -> Result<TMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotInvertible("matrix is not square".into()));
        }
        let a: Vec<QMatrix> = (0..=self.order).map(|k| self.coefficient(k)).collect();
        let a0inv = a[0]
            .inverse()
            .map_err(|_| Error::NotInvertible("leading coefficient is singular".into()))?;
        let mut x = vec![a0inv.clone()];
        for k in 1..=self.order {
            let mut acc = QMatrix::zeros(self.rows, self.cols);
            for i in 1..=k {
                acc = acc.add(&a[i].mul(&x[k - i]));
            }
            x.push(a0inv.mul(&acc).scale(&-Rat::one()));
        }
        Ok(TMatrix::from_coefficients(&x))
    }
}

impl std::ops::Index<(usize, usize)> for TMatrix {
    type Output = Trunc;
    fn index(&self, (i, j): (usize, usize)) -> &Trunc {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for TMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Trunc {
        &mut self.data[i * self.cols + j]
    }
}
