use crate::error::{Error, Result};
use crate::trunc::{TMatrix, Trunc};

/// Element of a structure-constant algebra: coordinates in the basis.
pub type Element = Vec<Trunc>;

/// A free algebra of finite rank over the truncated ring, given by structure
/// constants `e_a e_b = Σ_c s[a][b][c] e_c` and a unit vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCAlgebra {
    rank: usize,
    order: usize,
    structure: Vec<Vec<Vec<Trunc>>>,
    unit: Element,
}

impl SCAlgebra {
    /// Builds the algebra and checks associativity and the unit law on all
    /// basis elements.
    pub fn new(structure: Vec<Vec<Vec<Trunc>>>, unit: Element) -> Result<Self> {
        let rank = unit.len();
        if rank == 0 {
            return Err(Error::InvalidData("algebra of rank zero".into()));
        }
        let order = unit[0].order();
        let shape_ok = structure.len() == rank
            && structure.iter().all(|row| {
                row.len() == rank
                    && row
                        .iter()
                        .all(|v| v.len() == rank && v.iter().all(|t| t.order() == order))
            })
            && unit.iter().all(|t| t.order() == order);
        if !shape_ok {
            return Err(Error::InvalidData("structure constants have the wrong shape".into()));
        }
        let alg = SCAlgebra {
            rank,
            order,
            structure,
            unit,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// `d×d` matrices with basis `E_{ij}` at index `i·d + j`.
    pub fn matrix_algebra(d: usize, order: usize) -> Self {
        let r = d * d;
        let mut structure = vec![vec![vec![Trunc::zero(order); r]; r]; r];
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    structure[i * d + j][j * d + l][i * d + l] = Trunc::one(order);
                }
            }
        }
        let mut unit = vec![Trunc::zero(order); r];
        for i in 0..d {
            unit[i * d + i] = Trunc::one(order);
        }
        SCAlgebra {
            rank: r,
            order,
            structure,
            unit,
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let r = self.rank;
        for a in 0..r {
            let ea = self.basis(a);
            if self.mul(&self.unit, &ea) != ea || self.mul(&ea, &self.unit) != ea {
                return Err(Error::InvalidData(format!("unit law fails on basis element {a}")));
            }
            for b in 0..r {
                let ab = self.mul(&ea, &self.basis(b));
                for c in 0..r {
                    let ec = self.basis(c);
                    if self.mul(&ab, &ec) != self.mul(&ea, &self.mul(&self.basis(b), &ec)) {
                        return Err(Error::InvalidData(format!("associativity fails on ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn structure(&self) -> &[Vec<Vec<Trunc>>] {
        &self.structure
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn zero(&self) -> Element {
        vec![Trunc::zero(self.order); self.rank]
    }

    pub fn basis(&self, a: usize) -> Element {
        let mut e = self.zero();
        e[a] = Trunc::one(self.order);
        e
    }

    /// The central element `s·1`.
    pub fn scalar(&self, s: &Trunc) -> Element {
        self.unit.iter().map(|u| u.mul(s)).collect()
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = self.zero();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let coef = xa.mul(yb);
                for (c, s) in self.structure[a][b].iter().enumerate() {
                    if !s.is_zero() {
                        out[c] = out[c].add(&coef.mul(s));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    /// Matrix of `h ↦ x·h`.
    pub fn left_mul_matrix(&self, x: &Element) -> TMatrix {
        let mut m = TMatrix::zeros(self.rank, self.rank, self.order);
        for b in 0..self.rank {
            let col = self.mul(x, &self.basis(b));
            for (c, v) in col.into_iter().enumerate() {
                m[(c, b)] = v;
            }
        }
        m
    }

    /// Two-sided inverse, if the element is a unit.
    pub fn inverse(&self, x: &Element) -> Result<Element> {
        let linv = self
            .left_mul_matrix(x)
            .inverse()
            .map_err(|_| Error::NotInvertible("algebra element".into()))?;
        let y = apply(&linv, &self.unit);
        if self.mul(&y, x) != self.unit {
            return Err(Error::NotInvertible("algebra element has no two-sided inverse".into()));
        }
        Ok(y)
    }

    pub fn is_one(&self, x: &Element) -> bool {
        *x == self.unit
    }

    /// `x − 1 ≡ 0 mod ℏ^k`.
    pub fn is_one_mod(&self, x: &Element, k: usize) -> bool {
        x.iter()
            .zip(&self.unit)
            .all(|(a, u)| (0..k.min(self.order + 1)).all(|i| a.coeff(i) == u.coeff(i)))
    }

    /// Matrix of `Ad(u) : h ↦ u⁻¹ h u`.
    pub fn ad_matrix(&self, u: &Element) -> Result<TMatrix> {
        let uinv = self.inverse(u)?;
        let mut m = TMatrix::zeros(self.rank, self.rank, self.order);
        for b in 0..self.rank {
            let col = self.mul(&self.mul(&uinv, &self.basis(b)), u);
            for (c, v) in col.into_iter().enumerate() {
                m[(c, b)] = v;
            }
        }
        Ok(m)
    }

    /// Whether the linear map `g` (columns are images of basis elements) is a
    /// unital algebra homomorphism into `target`.
    pub fn is_homomorphism(&self, g: &TMatrix, target: &SCAlgebra) -> bool {
        if apply(g, &self.unit) != target.unit {
            return false;
        }
        (0..self.rank).all(|a| {
            (0..self.rank).all(|b| {
                let lhs = apply(g, &self.mul(&self.basis(a), &self.basis(b)));
                let rhs = target.mul(&apply(g, &self.basis(a)), &apply(g, &self.basis(b)));
                lhs == rhs
            })
        })
    }
}

/// Applies a matrix to a coordinate vector.
pub fn apply(m: &TMatrix, x: &Element) -> Element {
    (0..m.rows())
        .map(|i| {
            let mut acc = Trunc::zero(m.order());
            for (j, xj) in x.iter().enumerate() {
                if !xj.is_zero() {
                    acc = acc.add(&m[(i, j)].mul(xj));
                }
            }
            acc
        })
        .collect()
}
