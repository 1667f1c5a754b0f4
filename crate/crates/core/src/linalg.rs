//! Dense exact linear algebra over the rationals.
//!
//! Row reduction always scans columns left to right and takes the first row
//! (from the top) with a nonzero entry as pivot, so the reduced row-echelon
//! form, the pivot set, and the "free variables zero" solution are fully
//! determined by the column order the caller chooses.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Result of solving `A x = b` by reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Pivot solution with all free variables set to zero. When the system is
    /// inconsistent this still satisfies every consistent pivot row.
    pub x: Vec<Rat>,
    pub consistent: bool,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row);
        }
        QMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// In-place reduced row-echelon form; returns the pivot columns among the
    /// first `ncols` columns (trailing columns are carried along, e.g. an
    /// augmented right-hand side).
    fn rref_in_place(&mut self, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(r, j)] * &f;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place(self.cols);
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solves `A x = b`, setting free variables to zero.
    pub fn solve(&self, b: &[Rat]) -> Solution {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place(self.cols);
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        let consistent = (pivots.len()..self.rows).all(|r| aug[(r, self.cols)].is_zero());
        Solution { x, consistent, pivots }
    }

    /// Basis of the right null space, one vector per free column, in column
    /// order; each basis vector has a 1 in its free column.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().peekable();
        for free in 0..self.cols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::Singular("non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return Err(Error::Singular(format!("rank {} < {}", pivots.len(), n)));
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    #[test]
    fn rref_rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(Zero::is_zero));
        assert_eq!(ns[0], vec![rat(-1), rat(-1), rat(1)]);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let s = a.solve(&[rat(3), rat(2)]);
        assert!(s.consistent);
        assert_eq!(s.x, vec![rat(3), rat(0), rat(2)]);
        assert_eq!(s.pivots, vec![0, 2]);
    }

    #[test]
    fn inconsistent_system_is_flagged() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let s = a.solve(&[rat(1), rat(3)]);
        assert!(!s.consistent);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert_eq!(inv[(0, 1)], ratio(-1, 1));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }
}
