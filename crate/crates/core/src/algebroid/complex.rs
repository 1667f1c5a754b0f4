use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::Rat;

/// A simplicial complex of dimension at most three on vertices `0..n`.
/// Simplices are stored as sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    nvertices: usize,
    edges: BTreeSet<[usize; 2]>,
    faces: BTreeSet<[usize; 3]>,
    tets: BTreeSet<[usize; 4]>,
}

fn sorted<const K: usize>(mut s: [usize; K]) -> Result<[usize; K]> {
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidComplex(format!("repeated vertex in {s:?}")));
    }
    Ok(s)
}

impl SimplicialComplex {
    pub fn new(
        nvertices: usize,
        edges: impl IntoIterator<Item = [usize; 2]>,
        faces: impl IntoIterator<Item = [usize; 3]>,
        tets: impl IntoIterator<Item = [usize; 4]>,
    ) -> Result<Self> {
        let edges = edges.into_iter().map(sorted).collect::<Result<BTreeSet<_>>>()?;
        let faces = faces.into_iter().map(sorted).collect::<Result<BTreeSet<_>>>()?;
        let tets = tets.into_iter().map(sorted).collect::<Result<BTreeSet<_>>>()?;
        let c = SimplicialComplex {
            nvertices,
            edges,
            faces,
            tets,
        };
        for e in &c.edges {
            if e[1] >= nvertices {
                return Err(Error::InvalidComplex(format!("edge {e:?} uses an unknown vertex")));
            }
        }
        for f in &c.faces {
            for e in [[f[0], f[1]], [f[0], f[2]], [f[1], f[2]]] {
                if !c.edges.contains(&e) {
                    return Err(Error::InvalidComplex(format!("face {f:?} is missing edge {e:?}")));
                }
            }
        }
        for t in &c.tets {
            for skip in 0..4 {
                let f: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| t[i]).collect();
                if !c.faces.contains(&[f[0], f[1], f[2]]) {
                    return Err(Error::InvalidComplex(format!("3-face {t:?} is missing face {f:?}")));
                }
            }
        }
        Ok(c)
    }

    /// All simplices of dimension ≤ min(d, 3) on `d + 1` vertices.
    pub fn full_simplex(d: usize) -> Self {
        let n = d + 1;
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        let mut tets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push([a, b]);
                for c in b + 1..n {
                    faces.push([a, b, c]);
                    for e in c + 1..n {
                        tets.push([a, b, c, e]);
                    }
                }
            }
        }
        Self::new(n, edges, faces, tets).expect("full simplex is closed")
    }

    /// The boundary of the tetrahedron: a triangulated 2-sphere.
    pub fn boundary_tetrahedron() -> Self {
        let full = Self::full_simplex(3);
        Self::new(4, full.edges, full.faces, []).expect("boundary is closed")
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    pub fn edges(&self) -> impl Iterator<Item = &[usize; 2]> {
        self.edges.iter()
    }

    pub fn faces(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.faces.iter()
    }

    pub fn tets(&self) -> impl Iterator<Item = &[usize; 4]> {
        self.tets.iter()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&[a.min(b), a.max(b)])
    }

    pub fn has_face(&self, a: usize, b: usize, c: usize) -> bool {
        sorted([a, b, c]).is_ok_and(|f| self.faces.contains(&f))
    }

    /// Neighbours of a vertex in ascending order.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.nvertices).filter(|&w| self.has_edge(v, w)).collect()
    }

    /// Shortest path from `x` to `y`, preferring smaller vertices at each step
    /// of a breadth-first search from `x`.
    pub fn tree_path(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([x]);
        let mut seen = BTreeSet::from([x]);
        while let Some(v) = queue.pop_front() {
            if v == y {
                break;
            }
            for w in self.neighbours(v) {
                if seen.insert(w) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        if !seen.contains(&y) {
            return Err(Error::Disconnected);
        }
        let mut path = vec![y];
        while let Some(&p) = parent.get(path.last().expect("nonempty")) {
            path.push(p);
        }
        path.reverse();
        Ok(path)
    }

    pub fn is_connected(&self) -> bool {
        (0..self.nvertices).all(|v| self.tree_path(0, v).is_ok())
    }

    /// Sorted simplices of dimension `q` (0 ≤ q ≤ 3).
    pub fn simplices(&self, q: usize) -> Vec<Vec<usize>> {
        match q {
            0 => (0..self.nvertices).map(|v| vec![v]).collect(),
            1 => self.edges.iter().map(|s| s.to_vec()).collect(),
            2 => self.faces.iter().map(|s| s.to_vec()).collect(),
            3 => self.tets.iter().map(|s| s.to_vec()).collect(),
            _ => Vec::new(),
        }
    }

    /// Matrix of `δ : C^q → C^{q+1}`, `(δc)(v₀…v_{q+1}) = Σ_i (−1)^i c(…v̂_i…)`.
    pub fn coboundary_matrix(&self, q: usize) -> QMatrix {
        let rows = self.simplices(q + 1);
        let cols = self.simplices(q);
        let index: BTreeMap<&Vec<usize>, usize> = cols.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        for (r, s) in rows.iter().enumerate() {
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                let sign = if skip % 2 == 0 { Rat::one() } else { -Rat::one() };
                m[(r, index[&face])] += sign;
            }
        }
        m
    }
}

/// Rank of `H^q` of the complex with rational coefficients.
pub fn cech_cohomology(c: &SimplicialComplex, q: usize) -> usize {
    let dim = c.simplices(q).len();
    if dim == 0 {
        return 0;
    }
    let out_rank = c.coboundary_matrix(q).rank();
    let in_rank = if q == 0 { 0 } else { c.coboundary_matrix(q - 1).rank() };
    dim - out_rank - in_rank
}

/// Evaluates `δc` for a 2-cochain given on sorted faces, as a map on sorted
/// 3-faces.
pub fn coboundary_2(c: &SimplicialComplex, cochain: &BTreeMap<[usize; 3], Rat>) -> BTreeMap<[usize; 4], Rat> {
    let get = |f: [usize; 3]| cochain.get(&f).cloned().unwrap_or_else(Rat::zero);
    c.tets
        .iter()
        .map(|&[i, j, k, l]| {
            (
                [i, j, k, l],
                get([j, k, l]) - get([i, k, l]) + get([i, j, l]) - get([i, j, k]),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_and_ball() {
        assert_eq!(cech_cohomology(&SimplicialComplex::full_simplex(3), 2), 0);
        assert_eq!(cech_cohomology(&SimplicialComplex::boundary_tetrahedron(), 2), 1);
        assert_eq!(cech_cohomology(&SimplicialComplex::full_simplex(2), 2), 0);
        assert_eq!(cech_cohomology(&SimplicialComplex::full_simplex(3), 0), 1);
        assert_eq!(cech_cohomology(&SimplicialComplex::boundary_tetrahedron(), 1), 0);
    }

    #[test]
    fn circle_has_h1() {
        let c = SimplicialComplex::new(3, [[0, 1], [1, 2], [0, 2]], [], []).unwrap();
        assert_eq!(cech_cohomology(&c, 1), 1);
        assert_eq!(cech_cohomology(&c, 0), 1);
    }

    #[test]
    fn missing_edge_is_rejected() {
        assert!(SimplicialComplex::new(3, [[0, 1], [1, 2]], [[0, 1, 2]], []).is_err());
    }

    #[test]
    fn tree_paths() {
        let c = SimplicialComplex::boundary_tetrahedron();
        assert_eq!(c.tree_path(2, 2).unwrap(), vec![2]);
        assert_eq!(c.tree_path(0, 3).unwrap(), vec![0, 3]);
        let two = SimplicialComplex::new(2, [], [], []).unwrap();
        assert_eq!(two.tree_path(0, 1), Err(Error::Disconnected));
    }
}
