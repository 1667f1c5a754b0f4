//! Deformed quadratic algebras attached to quadratic Poisson brackets.
//!
//! Tensors in `V*^{⊗d}` are dense vectors indexed by words `(a₁,…,a_d)`, with
//! flat index `Σ a_i n^{d−i}`. Relations are rows of a [`TMatrix`] whose
//! entries live in the truncated ring `Q[ℏ]/(ℏ^{N+1})`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{jacobi_check, Bivector, HSeries, Monomial, Poly};
use crate::rational::{factorial, ratio, Rat};
use crate::star::{star_multiply, star_solve, AnsatzSpec, SolveOutcome, StarProduct};
use crate::trunc::{TMatrix, Trunc};

/// A truncated point of the space of quadratic algebras: quadratic relations
/// `r2` (rank `n(n−1)/2`) and cubic relations `r3` (rank `n³ − C(n+2,3)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticData {
    pub dim: usize,
    pub order: usize,
    pub r2: TMatrix,
    pub r3: TMatrix,
}

/// Outcome of checking `R2⊗V + V⊗R2 ⊆ R3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    /// Number of products `r⊗x_c` and `x_c⊗r` tested.
    pub checked: usize,
    /// Indices of tested products that are not in the span of `R3`.
    pub non_members: Vec<usize>,
    /// Whether every tested product is killed by the triple product.
    pub annihilated: bool,
}

impl ContainmentReport {
    pub fn holds(&self) -> bool {
        self.non_members.is_empty() && self.annihilated
    }
}

pub fn wedge_rank(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `a₃ = n³ − dim Sym³`.
pub fn cubic_rank(n: usize) -> usize {
    n.pow(3) - (n + 2) * (n + 1) * n / 6
}

/// Standard embedding `Sym^d ↪ V^{⊗d}`: a monomial goes to the average of its
/// distinct orderings, so that symmetrizing the image returns the monomial.
pub fn sym_lift(m: &Monomial) -> Vec<(usize, Rat)> {
    let n = m.nvars();
    let mut letters = Vec::new();
    for (v, &e) in m.exps().iter().enumerate() {
        letters.extend(std::iter::repeat_n(v, e as usize));
    }
    let mut words = Vec::new();
    distinct_perms(&mut letters.clone(), 0, &mut words);
    let count = factorial(letters.len()) / m.factorial();
    let w = count.recip();
    words
        .into_iter()
        .map(|word| (flat_index(n, &word), w.clone()))
        .collect()
}

fn distinct_perms(letters: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == letters.len() {
        out.push(letters.clone());
        return;
    }
    let mut seen = Vec::new();
    for i in start..letters.len() {
        if seen.contains(&letters[i]) {
            continue;
        }
        seen.push(letters[i]);
        letters.swap(start, i);
        distinct_perms(letters, start + 1, out);
        letters.swap(start, i);
    }
}

fn flat_index(n: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &a| acc * n + a)
}

fn word_of(n: usize, mut idx: usize, d: usize) -> Vec<usize> {
    let mut w = vec![0; d];
    for slot in (0..d).rev() {
        w[slot] = idx % n;
        idx /= n;
    }
    w
}

/// Matrices `M_k : V^{⊗d} → Sym^d` with `Σ ℏ^k M_k(x_{a₁}⊗…⊗x_{a_d})` the
/// left-nested star product `((x_{a₁} * x_{a₂}) * …) * x_{a_d}`.
fn product_matrices(s: &StarProduct, d: usize) -> Result<(Vec<Monomial>, Vec<QMatrix>)> {
    let n = s.nvars();
    let order = s.order();
    let basis = Monomial::all_of_degree(n, d as u32);
    let cols = n.pow(d as u32);
    let mut mats = vec![QMatrix::zeros(basis.len(), cols); order + 1];
    let row_of = |m: &Monomial| basis.binary_search(m).map_err(|_| Error::NotDegreePreserving);
    for idx in 0..cols {
        let word = word_of(n, idx, d);
        let mut acc = HSeries::from_poly(Poly::var(n, word[0]), order);
        for &a in &word[1..] {
            acc = star_multiply(s, &acc, &HSeries::from_poly(Poly::var(n, a), order))?;
        }
        for (k, mat) in mats.iter_mut().enumerate() {
            for (m, c) in acc.coeff(k).terms() {
                mat[(row_of(m)?, idx)] = c.clone();
            }
        }
    }
    Ok((basis, mats))
}

/// Lifts a classical kernel vector order by order: the correction at `ℏ^k` is
/// the symmetric lift of `−Σ_{i≥1} M_i r_{k−i}`.
fn lift_kernel(basis: &[Monomial], mats: &[QMatrix], r0: Vec<Rat>) -> Vec<Trunc> {
    let order = mats.len() - 1;
    let mut levels = vec![r0];
    for k in 1..=order {
        let mut img = vec![Rat::zero(); basis.len()];
        for i in 1..=k {
            for (acc, v) in img.iter_mut().zip(mats[i].mul_vec(&levels[k - i])) {
                *acc += v;
            }
        }
        let mut next = vec![Rat::zero(); levels[0].len()];
        for (m, c) in basis.iter().zip(&img) {
            if c.is_zero() {
                continue;
            }
            for (idx, w) in sym_lift(m) {
                next[idx] -= c * &w;
            }
        }
        levels.push(next);
    }
    (0..levels[0].len())
        .map(|idx| Trunc::from_coeffs(levels.iter().map(|l| l[idx].clone()).collect()).expect("nonempty"))
        .collect()
}

fn require_degree_preserving(s: &StarProduct) -> Result<()> {
    if s.is_degree_preserving() {
        Ok(())
    } else {
        Err(Error::NotDegreePreserving)
    }
}

/// Generators of the kernel of `V*⊗V* → Sym²` given by `a⊗b ↦ a*b`, one per
/// pair `i < j`, lifting `x_i⊗x_j − x_j⊗x_i`.
pub fn quad_relations(s: &StarProduct) -> Result<TMatrix> {
    require_degree_preserving(s)?;
    let n = s.nvars();
    let (basis, mats) = product_matrices(s, 2)?;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r0 = vec![Rat::zero(); n * n];
            r0[i * n + j] = Rat::one();
            r0[j * n + i] = -Rat::one();
            rows.push(lift_kernel(&basis, &mats, r0));
        }
    }
    if rows.is_empty() {
        return Ok(TMatrix::zeros(0, n * n, s.order()));
    }
    TMatrix::from_rows(rows, s.order())
}

/// Generators of the kernel of the triple product, lifted from the classical
/// kernel of symmetrization, together with the containment check against `r2`.
pub fn cubic_relations(s: &StarProduct, r2: &TMatrix) -> Result<(TMatrix, ContainmentReport)> {
    require_degree_preserving(s)?;
    let n = s.nvars();
    let order = s.order();
    let (basis, mats) = product_matrices(s, 3)?;
    let rows: Vec<Vec<Trunc>> = mats[0]
        .nullspace()
        .into_iter()
        .map(|r0| lift_kernel(&basis, &mats, r0))
        .collect();
    let r3 = if rows.is_empty() {
        TMatrix::zeros(0, n.pow(3), order)
    } else {
        TMatrix::from_rows(rows, order)?
    };

    let products = r2_times_v(n, r2);
    let non_members = products
        .iter()
        .enumerate()
        .filter(|(_, u)| !is_member(&r3, u))
        .map(|(i, _)| i)
        .collect();
    let annihilated = products
        .iter()
        .all(|u| apply_series(&mats, u).iter().all(Trunc::is_zero));
    Ok((
        r3,
        ContainmentReport {
            checked: products.len(),
            non_members,
            annihilated,
        },
    ))
}

/// All `r⊗x_c` followed by all `x_c⊗r` for rows `r` of `r2`.
fn r2_times_v(n: usize, r2: &TMatrix) -> Vec<Vec<Trunc>> {
    let order = r2.order();
    let mut out = Vec::new();
    for left in [true, false] {
        for g in 0..r2.rows() {
            let r = r2.row(g);
            for c in 0..n {
                let mut u = vec![Trunc::zero(order); n.pow(3)];
                for a in 0..n {
                    for b in 0..n {
                        let idx = if left {
                            flat_index(n, &[a, b, c])
                        } else {
                            flat_index(n, &[c, a, b])
                        };
                        u[idx] = r[a * n + b].clone();
                    }
                }
                out.push(u);
            }
        }
    }
    out
}

fn apply_series(mats: &[QMatrix], u: &[Trunc]) -> Vec<Trunc> {
    let order = mats.len() - 1;
    let rows = mats[0].rows();
    let mut out = vec![Trunc::zero(order); rows];
    for (i, m) in mats.iter().enumerate() {
        for j in 0..=order - i {
            let uj: Vec<Rat> = u.iter().map(|t| t.coeff(j).clone()).collect();
            for (row, v) in m.mul_vec(&uj).into_iter().enumerate() {
                out[row] = out[row].add(&Trunc::monomial(order, i + j, v));
            }
        }
    }
    out
}

/// Whether `u` is a `TruncRing`-combination of the rows of `basis`, solved
/// order by order against the leading coefficient matrix.
pub fn is_member(basis: &TMatrix, u: &[Trunc]) -> bool {
    solve_membership(basis, u).is_some()
}

/// Coefficients `y` with `Σ_g y_g · basis_g = u`, if they exist.
pub fn solve_membership(basis: &TMatrix, u: &[Trunc]) -> Option<Vec<Trunc>> {
    let order = basis.order();
    let b: Vec<QMatrix> = (0..=order).map(|k| basis.coefficient(k).transpose()).collect();
    let mut ys: Vec<Vec<Rat>> = Vec::new();
    for k in 0..=order {
        let mut rhs: Vec<Rat> = u.iter().map(|t| t.coeff(k).clone()).collect();
        for i in 1..=k {
            for (acc, v) in rhs.iter_mut().zip(b[i].mul_vec(&ys[k - i])) {
                *acc -= v;
            }
        }
        let sol = b[0].solve(&rhs);
        if !sol.consistent {
            return None;
        }
        ys.push(sol.x);
    }
    Some(
        (0..basis.rows())
            .map(|g| Trunc::from_coeffs(ys.iter().map(|y| y[g].clone()).collect()).expect("nonempty"))
            .collect(),
    )
}

fn require_quadratic(gamma: &Bivector) -> Result<()> {
    if gamma
        .entries()
        .all(|(_, p)| p.is_zero() || (p.is_homogeneous() && p.degree() == Some(2)))
    {
        Ok(())
    } else {
        Err(Error::NotQuadratic)
    }
}

/// Solves for a degree-preserving star product of a quadratic Poisson bracket
/// and returns its quadratic and cubic relations. The output is one gauge
/// representative; only its first-order part is canonical.
pub fn quant_map(gamma: &Bivector, order: usize) -> Result<QuadraticData> {
    require_quadratic(gamma)?;
    if !jacobi_check(gamma).passed() {
        return Err(Error::JacobiFailure);
    }
    let spec = AnsatzSpec {
        deriv_bound: None,
        homogeneous_only: true,
    };
    let s = match star_solve(gamma, order, &spec)? {
        SolveOutcome::Solved(s) => s,
        SolveOutcome::Obstructed(ob) => return Err(Error::Obstructed(ob.order)),
    };
    quadratic_data(&s)
}

/// Relations of an already-solved degree-preserving star product.
pub fn quadratic_data(s: &StarProduct) -> Result<QuadraticData> {
    let r2 = quad_relations(s)?;
    let (r3, report) = cubic_relations(s, &r2)?;
    if !report.holds() {
        return Err(Error::InvalidData("cubic relations do not contain R2⊗V + V⊗R2".into()));
    }
    Ok(QuadraticData {
        dim: s.nvars(),
        order: s.order(),
        r2,
        r3,
    })
}

impl QuadraticData {
    /// The commutative point: classical relations with no corrections.
    pub fn commutative(n: usize, order: usize) -> QuadraticData {
        let s = StarProduct::from_ops(
            std::iter::once(crate::poly::BiDiffOp::multiplication(n))
                .chain((1..=order).map(|_| crate::poly::BiDiffOp::zero(n)))
                .collect(),
        )
        .expect("commutative product is valid");
        quadratic_data(&s).expect("commutative relations are consistent")
    }

    /// Checks ranks, the classical limit of `r2` and the containment of
    /// `R2⊗V + V⊗R2` in `R3`.
    pub fn validate(&self) -> Result<ContainmentReport> {
        let n = self.dim;
        if self.r2.cols() != n * n || self.r3.cols() != n.pow(3) {
            return Err(Error::InvalidData("relation matrices have the wrong width".into()));
        }
        if self.r2.order() != self.order || self.r3.order() != self.order {
            return Err(Error::OrderMismatch(self.r2.order(), self.order));
        }
        let r2_0 = self.r2.coefficient(0);
        if r2_0.rank() != wedge_rank(n) || self.r2.rows() != wedge_rank(n) {
            return Err(Error::InvalidData("R2 does not have rank n(n-1)/2".into()));
        }
        let antisymmetric = (0..self.r2.rows())
            .all(|g| (0..n).all(|a| (0..n).all(|b| r2_0[(g, a * n + b)] == -r2_0[(g, b * n + a)].clone())));
        if !antisymmetric {
            return Err(Error::InvalidData("R2 is not antisymmetric at hbar = 0".into()));
        }
        if self.r3.coefficient(0).rank() != cubic_rank(n) || self.r3.rows() != cubic_rank(n) {
            return Err(Error::InvalidData("R3 does not have rank n^3 - C(n+2,3)".into()));
        }
        let products = r2_times_v(n, &self.r2);
        let non_members = products
            .iter()
            .enumerate()
            .filter(|(_, u)| !is_member(&self.r3, u))
            .map(|(i, _)| i)
            .collect();
        Ok(ContainmentReport {
            checked: products.len(),
            non_members,
            annihilated: true,
        })
    }
}

/// Reads `γ` off the `ℏ¹` part of the quadratic relations.
///
/// The generators are first normalized over the truncated ring so that their
/// antisymmetric parts are exactly `x_i⊗x_j − x_j⊗x_i`. The `ℏ¹` part is then
/// symmetric and equals minus the symmetric lift of `2γ^{ij}`.
pub fn dequant_first_order(q: &QuadraticData) -> Result<Bivector> {
    let n = q.dim;
    let m = wedge_rank(n);
    if q.r2.rows() != m || q.r2.cols() != n * n {
        return Err(Error::NotNormalized(format!(
            "expected {m} generators on {n} variables"
        )));
    }
    if q.order < 1 {
        return Err(Error::NotNormalized("order 0 carries no first-order data".into()));
    }
    let order = q.order;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let half = ratio(1, 2);
    let mut a = TMatrix::zeros(m, m, order);
    for g in 0..m {
        for (p, &(i, j)) in pairs.iter().enumerate() {
            a[(g, p)] = q.r2[(g, i * n + j)].sub(&q.r2[(g, j * n + i)]).scale(&half);
        }
    }
    let ainv = a
        .inverse()
        .map_err(|_| Error::NotNormalized("antisymmetric parts are degenerate at hbar = 0".into()))?;
    let normalized = ainv.mul(&q.r2);
    let mut entries = Vec::new();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let mut gamma = Poly::zero(n);
        for a_ in 0..n {
            for b in a_..n {
                let s = normalized[(p, a_ * n + b)]
                    .add(&normalized[(p, b * n + a_)])
                    .scale(&half);
                if !s.coeff(0).is_zero() {
                    return Err(Error::NotNormalized(format!(
                        "generator {p} has a symmetric part at hbar = 0"
                    )));
                }
                let mult = if a_ == b {
                    Rat::one()
                } else {
                    Rat::from_integer(2.into())
                };
                let mono = Monomial::var(n, a_).mul(&Monomial::var(n, b));
                gamma.add_term(mono, -(s.coeff(1) * &mult) * &half);
            }
        }
        entries.push((i, j, gamma));
    }
    Bivector::from_entries(n, entries)
}

/// Adds a central variable `z` (index `n`) making every coefficient quadratic:
/// `γ'^{ij} = z²·γ₀ + z·γ₁ + γ₂` for the homogeneous parts `γ_d` of `γ^{ij}`.
pub fn homogenize(gamma: &Bivector) -> Result<Bivector> {
    if let Some(d) = gamma.max_degree() {
        if d > 2 {
            return Err(Error::DegreeTooHigh(d as usize, 2));
        }
    }
    let n = gamma.nvars();
    let z = Poly::var(n + 1, n);
    let mut entries = Vec::new();
    for (&(i, j), p) in gamma.entries() {
        let q = p.extend_vars(1);
        let mut out = Poly::zero(n + 1);
        for d in 0..=2u32 {
            let part = q.homogeneous_part(d);
            out = &out + &(&part * &z.pow(2 - d));
        }
        entries.push((i, j, out));
    }
    Bivector::from_entries(n + 1, entries)
}

/// Sets the last variable to one, undoing [`homogenize`].
pub fn dehomogenize(gamma: &Bivector) -> Result<Bivector> {
    let n1 = gamma.nvars();
    if n1 == 0 {
        return Err(Error::InvalidData("no variable to specialize".into()));
    }
    let n = n1 - 1;
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    images.push(Poly::one(n));
    let mut entries = Vec::new();
    for (&(i, j), p) in gamma.entries() {
        if j == n {
            if !p.is_zero() {
                return Err(Error::InvalidData("last variable is not central".into()));
            }
            continue;
        }
        entries.push((i, j, p.substitute(&images)?));
    }
    Bivector::from_entries(n, entries)
}
