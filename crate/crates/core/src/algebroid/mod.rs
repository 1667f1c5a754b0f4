//! Combinatorial algebroids: vertex algebras `a_i`, edge isomorphisms
//! `g_ij : a_i → a_j` and face units `a_ijk ∈ a_i` on a simplicial complex.
//!
//! Conventions: `Ad(u)(h) = u⁻¹ h u`; the constraints checked are
//!
//! * `a_ikj = a_ijk⁻¹`,
//! * `g_ki∘g_jk∘g_ij = Ad(a_ijk⁻¹)`,
//! * `a_jki = g_ij(a_ijk)`,
//! * `a_ikl·a_ijk = a_ijl·g_ji(a_jkl)` on every ordered 3-face.
//!
//! The standard model is a family of isomorphisms `f_ij : E_i → E_j` with
//! `g_ij(h) = f_ij h f_ij⁻¹` and `a_ijk = f_ki f_jk f_ij`.

mod algebra;
mod complex;
mod gauge;
mod paths;

pub use algebra::{apply, Element, SCAlgebra};
pub use complex::{cech_cohomology, coboundary_2, SimplicialComplex};
pub use gauge::{gauge_fix, GaugeObstruction, GaugeOutcome};
pub use paths::{hom_compose, hom_space, path_compare, path_compare_along, HomSpace, Move};

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::par::{IntoParallelRefIterator, ParallelIterator};
use crate::rational::Rat;
use crate::trunc::{TMatrix, Trunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidData {
    order: usize,
    complex: SimplicialComplex,
    algebras: Vec<SCAlgebra>,
    edge_maps: BTreeMap<(usize, usize), TMatrix>,
    face_units: BTreeMap<(usize, usize, usize), Element>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    EdgeInverse,
    EdgeHomomorphism,
    FaceUnitInvertible,
    FaceUnitInverse,
    Holonomy,
    Cyclic,
    Tetrahedron,
}

impl Constraint {
    pub fn identity(&self) -> &'static str {
        match self {
            Constraint::EdgeInverse => "g_ji = g_ij^{-1}",
            Constraint::EdgeHomomorphism => "g_ij is a unital algebra isomorphism",
            Constraint::FaceUnitInvertible => "a_ijk is invertible",
            Constraint::FaceUnitInverse => "a_ikj = a_ijk^{-1}",
            Constraint::Holonomy => "g_ki∘g_jk∘g_ij = Ad(a_ijk^{-1})",
            Constraint::Cyclic => "a_jki = g_ij(a_ijk)",
            Constraint::Tetrahedron => "a_ikl∘a_ijk = a_ijl∘g_ji(a_jkl)",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Constraint::EdgeInverse => "edge-inverse",
            Constraint::EdgeHomomorphism => "edge-homomorphism",
            Constraint::FaceUnitInvertible => "face-unit-invertible",
            Constraint::FaceUnitInverse => "face-unit-inverse",
            Constraint::Holonomy => "holonomy",
            Constraint::Cyclic => "cyclic",
            Constraint::Tetrahedron => "tetrahedron",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.identity())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// The first violated constraint and the ordered simplex it fails on.
    Fail {
        constraint: Constraint,
        simplex: Vec<usize>,
    },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// The six orderings of a face, starting with the sorted one.
pub fn orientations([p, q, r]: [usize; 3]) -> [(usize, usize, usize); 6] {
    [(p, q, r), (p, r, q), (q, p, r), (q, r, p), (r, p, q), (r, q, p)]
}

/// Sign of the permutation taking the sorted face to `(i, j, k)`.
pub fn orientation_sign(i: usize, j: usize, k: usize) -> i32 {
    let inversions = [(i, j), (i, k), (j, k)].iter().filter(|(a, b)| a > b).count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutations4(t: [usize; 4]) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([t[a], t[b], t[c], t[d]]);
                    }
                }
            }
        }
    }
    out
}

impl AlgebroidData {
    /// Assembles data from edge maps given in at least one direction per edge
    /// and face units given in at least one orientation per face. Missing
    /// directions are inverted; missing orientations are filled by the
    /// conventions `a_ikj = a_ijk⁻¹` and `a_jki = g_ij(a_ijk)`.
    pub fn new(
        complex: SimplicialComplex,
        algebras: Vec<SCAlgebra>,
        edge_maps: BTreeMap<(usize, usize), TMatrix>,
        face_units: BTreeMap<(usize, usize, usize), Element>,
    ) -> Result<Self> {
        if algebras.len() != complex.nvertices() {
            return Err(Error::InvalidData(format!(
                "{} algebras for {} vertices",
                algebras.len(),
                complex.nvertices()
            )));
        }
        let order = algebras.first().map_or(0, SCAlgebra::order);
        if algebras.iter().any(|a| a.order() != order) {
            return Err(Error::InvalidData("algebras have different truncation orders".into()));
        }
        let mut maps = BTreeMap::new();
        for &[i, j] in complex.edges() {
            let (ri, rj) = (algebras[i].rank(), algebras[j].rank());
            let check = |m: &TMatrix, rows: usize, cols: usize| -> Result<()> {
                if m.rows() != rows || m.cols() != cols || m.order() != order {
                    Err(Error::InvalidData(format!("edge map on {i}-{j} has the wrong shape")))
                } else {
                    Ok(())
                }
            };
            let fwd = edge_maps.get(&(i, j)).cloned();
            let bwd = edge_maps.get(&(j, i)).cloned();
            let (fwd, bwd) = match (fwd, bwd) {
                (Some(f), Some(b)) => (f, b),
                (Some(f), None) => {
                    let b = f.inverse()?;
                    (f, b)
                }
                (None, Some(b)) => {
                    let f = b.inverse()?;
                    (f, b)
                }
                (None, None) => return Err(Error::InvalidData(format!("no edge map for edge {i}-{j}"))),
            };
            check(&fwd, rj, ri)?;
            check(&bwd, ri, rj)?;
            maps.insert((i, j), fwd);
            maps.insert((j, i), bwd);
        }
        if let Some(&(i, j)) = edge_maps.keys().find(|(i, j)| !complex.has_edge(*i, *j)) {
            return Err(Error::NotAnEdge(i, j));
        }

        let mut units = BTreeMap::new();
        for &f in complex.faces() {
            let mut known: BTreeMap<(usize, usize, usize), Element> = orientations(f)
                .into_iter()
                .filter_map(|o| face_units.get(&o).map(|e| (o, e.clone())))
                .collect();
            if known.is_empty() {
                return Err(Error::InvalidData(format!("no face unit for face {f:?}")));
            }
            for (&(i, j, k), e) in &known {
                if e.len() != algebras[i].rank() || e.iter().any(|t| t.order() != order) {
                    return Err(Error::InvalidData(format!(
                        "face unit on {:?} has the wrong shape",
                        (i, j, k)
                    )));
                }
            }
            while known.len() < 6 {
                let mut added = false;
                for (&(i, j, k), e) in known.clone().iter() {
                    if let Entry::Vacant(v) = known.entry((i, k, j)) {
                        if let Ok(inv) = algebras[i].inverse(e) {
                            v.insert(inv);
                            added = true;
                        }
                    }
                    if let Entry::Vacant(v) = known.entry((j, k, i)) {
                        v.insert(apply(&maps[&(i, j)], e));
                        added = true;
                    }
                }
                if !added {
                    return Err(Error::NotInvertible(format!("face unit on {f:?}")));
                }
            }
            units.extend(known);
        }
        if let Some(o) = face_units.keys().find(|(i, j, k)| !complex.has_face(*i, *j, *k)) {
            return Err(Error::InvalidData(format!("face unit given on non-face {o:?}")));
        }
        Ok(AlgebroidData {
            order,
            complex,
            algebras,
            edge_maps: maps,
            face_units: units,
        })
    }

    /// The standard model: `g_ij(h) = f_ij h f_ij⁻¹` and
    /// `a_ijk = f_ki f_jk f_ij · τ_ijk` with central twists `τ` given on sorted
    /// faces (odd orderings use `τ⁻¹`). Every vertex carries the same algebra;
    /// `f` is given on sorted edges.
    pub fn from_transport(
        complex: SimplicialComplex,
        algebra: &SCAlgebra,
        f: &BTreeMap<(usize, usize), Element>,
        twist: &BTreeMap<[usize; 3], Trunc>,
    ) -> Result<Self> {
        let mut full_f: BTreeMap<(usize, usize), Element> = BTreeMap::new();
        for &[i, j] in complex.edges() {
            let fij = f
                .get(&(i, j))
                .ok_or_else(|| Error::InvalidData(format!("no transport on edge {i}-{j}")))?;
            full_f.insert((j, i), algebra.inverse(fij)?);
            full_f.insert((i, j), fij.clone());
        }
        let mut edge_maps = BTreeMap::new();
        for (&(i, j), fij) in &full_f {
            let finv = &full_f[&(j, i)];
            let mut m = TMatrix::zeros(algebra.rank(), algebra.rank(), algebra.order());
            for b in 0..algebra.rank() {
                let col = algebra.mul(&algebra.mul(fij, &algebra.basis(b)), finv);
                for (c, v) in col.into_iter().enumerate() {
                    m[(c, b)] = v;
                }
            }
            edge_maps.insert((i, j), m);
        }
        let mut face_units = BTreeMap::new();
        for &face in complex.faces() {
            let tau = twist.get(&face).cloned().unwrap_or_else(|| Trunc::one(algebra.order()));
            let tau_inv = tau.inverse()?;
            for (i, j, k) in orientations(face) {
                let base = algebra.mul(&algebra.mul(&full_f[&(k, i)], &full_f[&(j, k)]), &full_f[&(i, j)]);
                let t = if orientation_sign(i, j, k) > 0 { &tau } else { &tau_inv };
                face_units.insert((i, j, k), algebra.mul(&base, &algebra.scalar(t)));
            }
        }
        let algebras = vec![algebra.clone(); complex.nvertices()];
        AlgebroidData::new(complex, algebras, edge_maps, face_units)
    }

    /// Identity edge maps and unit face elements.
    pub fn trivial(complex: SimplicialComplex, algebra: &SCAlgebra) -> Result<Self> {
        let f = complex
            .edges()
            .map(|&[i, j]| ((i, j), algebra.unit().clone()))
            .collect();
        Self::from_transport(complex, algebra, &f, &BTreeMap::new())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn algebra(&self, i: usize) -> &SCAlgebra {
        &self.algebras[i]
    }

    pub fn algebras(&self) -> &[SCAlgebra] {
        &self.algebras
    }

    pub fn edge_map(&self, i: usize, j: usize) -> Result<&TMatrix> {
        self.edge_maps.get(&(i, j)).ok_or(Error::NotAnEdge(i, j))
    }

    pub fn edge_maps(&self) -> &BTreeMap<(usize, usize), TMatrix> {
        &self.edge_maps
    }

    pub fn face_unit(&self, i: usize, j: usize, k: usize) -> Result<&Element> {
        self.face_units
            .get(&(i, j, k))
            .ok_or_else(|| Error::InvalidData(format!("({i},{j},{k}) is not a face")))
    }

    pub fn face_units(&self) -> &BTreeMap<(usize, usize, usize), Element> {
        &self.face_units
    }

    /// Replaces one stored orientation of a face unit, without refilling the
    /// others. Used to build deliberately inconsistent data.
    pub fn set_face_unit(&mut self, i: usize, j: usize, k: usize, e: Element) -> Result<()> {
        if !self.face_units.contains_key(&(i, j, k)) {
            return Err(Error::InvalidData(format!("({i},{j},{k}) is not a face")));
        }
        self.face_units.insert((i, j, k), e);
        Ok(())
    }

    /// Replaces the edge map in one direction, without touching the other.
    pub fn set_edge_map(&mut self, i: usize, j: usize, m: TMatrix) -> Result<()> {
        if !self.edge_maps.contains_key(&(i, j)) {
            return Err(Error::NotAnEdge(i, j));
        }
        self.edge_maps.insert((i, j), m);
        Ok(())
    }

    /// Multiplies every orientation of every face unit by a central scalar
    /// (its inverse on odd orderings), given on sorted faces.
    pub fn twist_faces(&self, twist: &BTreeMap<[usize; 3], Trunc>) -> Result<AlgebroidData> {
        let mut out = self.clone();
        for (face, t) in twist {
            let tinv = t.inverse()?;
            for (i, j, k) in orientations(*face) {
                let s = if orientation_sign(i, j, k) > 0 { t } else { &tinv };
                let alg = &self.algebras[i];
                let e = alg.mul(self.face_unit(i, j, k)?, &alg.scalar(s));
                out.face_units.insert((i, j, k), e);
            }
        }
        Ok(out)
    }
}

/// Composite `g_{i_{n−1}i_n}∘…∘g_{i₀i₁}` as a matrix; the identity on a
/// one-vertex path.
pub fn holonomy(d: &AlgebroidData, path: &[usize]) -> Result<TMatrix> {
    let Some(&first) = path.first() else {
        return Err(Error::InvalidData("empty path".into()));
    };
    if first >= d.complex.nvertices() {
        return Err(Error::InvalidData(format!("unknown vertex {first}")));
    }
    let mut m = TMatrix::identity(d.algebras[first].rank(), d.order);
    for w in path.windows(2) {
        m = d.edge_map(w[0], w[1])?.mul(&m);
    }
    Ok(m)
}

fn first_failure<T, F>(items: &[T], check: F) -> Option<Vec<usize>>
where
    T: Sync,
    F: Fn(&T) -> Option<Vec<usize>> + Sync + Send,
{
    items
        .par_iter()
        .map(check)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

/// Checks every constraint family in turn and reports the first violation.
/// Edge maps are checked first, then `a_ikj = a_ijk⁻¹`, holonomy, the cyclic
/// rule and finally the tetrahedron equation.
pub fn verify_algebroid(d: &AlgebroidData) -> Verdict {
    let edges: Vec<(usize, usize)> = d.edge_maps.keys().copied().collect();
    let oriented: Vec<(usize, usize, usize)> = d.face_units.keys().copied().collect();
    let tets: Vec<[usize; 4]> = d.complex.tets().flat_map(|t| permutations4(*t)).collect();

    let fail = |constraint, simplex| Verdict::Fail { constraint, simplex };

    if let Some(s) = first_failure(&edges, |&(i, j)| {
        let id = TMatrix::identity(d.algebras[i].rank(), d.order);
        (d.edge_maps[&(j, i)].mul(&d.edge_maps[&(i, j)]) != id).then(|| vec![i, j])
    }) {
        return fail(Constraint::EdgeInverse, s);
    }
    if let Some(s) = first_failure(&edges, |&(i, j)| {
        (!d.algebras[i].is_homomorphism(&d.edge_maps[&(i, j)], &d.algebras[j])).then(|| vec![i, j])
    }) {
        return fail(Constraint::EdgeHomomorphism, s);
    }
    if let Some(s) = first_failure(&oriented, |&(i, j, k)| {
        d.algebras[i]
            .inverse(&d.face_units[&(i, j, k)])
            .is_err()
            .then(|| vec![i, j, k])
    }) {
        return fail(Constraint::FaceUnitInvertible, s);
    }
    if let Some(s) = first_failure(&oriented, |&(i, j, k)| {
        let alg = &d.algebras[i];
        let prod = alg.mul(&d.face_units[&(i, k, j)], &d.face_units[&(i, j, k)]);
        (!alg.is_one(&prod)).then(|| vec![i, j, k])
    }) {
        return fail(Constraint::FaceUnitInverse, s);
    }
    if let Some(s) = first_failure(&oriented, |&(i, j, k)| {
        let alg = &d.algebras[i];
        let ok = holonomy(d, &[i, j, k, i]).ok().and_then(|h| {
            let ainv = alg.inverse(&d.face_units[&(i, j, k)]).ok()?;
            Some(h == alg.ad_matrix(&ainv).ok()?)
        });
        (ok != Some(true)).then(|| vec![i, j, k])
    }) {
        return fail(Constraint::Holonomy, s);
    }
    if let Some(s) = first_failure(&oriented, |&(i, j, k)| {
        let moved = apply(&d.edge_maps[&(i, j)], &d.face_units[&(i, j, k)]);
        (moved != d.face_units[&(j, k, i)]).then(|| vec![i, j, k])
    }) {
        return fail(Constraint::Cyclic, s);
    }
    if let Some(s) = first_failure(&tets, |&[i, j, k, l]| {
        let alg = &d.algebras[i];
        let lhs = alg.mul(&d.face_units[&(i, k, l)], &d.face_units[&(i, j, k)]);
        let moved = apply(&d.edge_maps[&(j, i)], &d.face_units[&(j, k, l)]);
        let rhs = alg.mul(&d.face_units[&(i, j, l)], &moved);
        (lhs != rhs).then(|| vec![i, j, k, l])
    }) {
        return fail(Constraint::Tetrahedron, s);
    }
    Verdict::Pass
}

/// `exp(ℏ^k c_f)` on each face for a rational 2-cochain.
pub fn central_twist(
    cochain: &BTreeMap<[usize; 3], Rat>,
    order: usize,
    k: usize,
) -> Result<BTreeMap<[usize; 3], Trunc>> {
    cochain
        .iter()
        .map(|(f, c)| Ok((*f, Trunc::monomial(order, k, c.clone()).exp()?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn twisted_model(order: usize, cochain: &BTreeMap<[usize; 3], Rat>) -> AlgebroidData {
        let alg = SCAlgebra::matrix_algebra(2, order);
        let complex = SimplicialComplex::full_simplex(3);
        let mut f = BTreeMap::new();
        for (n, &[i, j]) in complex.edges().enumerate() {
            let mut e = alg.unit().clone();
            e[1] = Trunc::scalar(order, rat(n as i64 + 1));
            e[2] = Trunc::monomial(order, 1, rat(i as i64 - j as i64));
            f.insert((i, j), e);
        }
        let twist = central_twist(cochain, order, 1).unwrap();
        AlgebroidData::from_transport(complex, &alg, &f, &twist).unwrap()
    }

    #[test]
    fn trivial_data_passes() {
        let alg = SCAlgebra::matrix_algebra(2, 1);
        let d = AlgebroidData::trivial(SimplicialComplex::full_simplex(3), &alg).unwrap();
        assert!(verify_algebroid(&d).passed());
    }

    #[test]
    fn transport_model_passes_and_closes_holonomy() {
        let d = twisted_model(2, &BTreeMap::new());
        assert_eq!(verify_algebroid(&d), Verdict::Pass);
        assert_eq!(holonomy(&d, &[2]).unwrap(), TMatrix::identity(4, 2));
        assert_eq!(holonomy(&d, &[0, 1]).unwrap(), *d.edge_map(0, 1).unwrap());
    }

    #[test]
    fn non_cocycle_twist_breaks_tetrahedron_only() {
        let cochain = BTreeMap::from([([0, 1, 2], rat(1))]);
        let d = twisted_model(1, &cochain);
        assert!(matches!(
            verify_algebroid(&d),
            Verdict::Fail {
                constraint: Constraint::Tetrahedron,
                ..
            }
        ));
    }

    #[test]
    fn filled_orientations_follow_convention() {
        let d = twisted_model(2, &BTreeMap::new());
        let mut given = BTreeMap::new();
        for &f in d.complex().faces() {
            given.insert((f[0], f[1], f[2]), d.face_unit(f[0], f[1], f[2]).unwrap().clone());
        }
        let rebuilt =
            AlgebroidData::new(d.complex().clone(), d.algebras().to_vec(), d.edge_maps().clone(), given).unwrap();
        assert_eq!(rebuilt, d);
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation_sign(0, 1, 2), 1);
        assert_eq!(orientation_sign(1, 2, 0), 1);
        assert_eq!(orientation_sign(0, 2, 1), -1);
    }
}
