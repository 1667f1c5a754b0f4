use std::collections::{BTreeMap, VecDeque};

use super::{apply, holonomy, AlgebroidData, Element};
use crate::error::{Error, Result};

/// Elementary homotopies of edge paths. Positions index into the current
/// path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Move {
    /// `(…, i, j, k, …) → (…, i, k, …)` across the face `ijk`, or
    /// `(…, i, j, i, …) → (…, i, …)` when `k = i`.
    Contract { pos: usize },
    /// `(…, i, k, …) → (…, i, via, k, …)` across the face `i via k`.
    Expand { pos: usize, via: usize },
    /// `(…, i, …) → (…, i, via, i, …)`.
    Spike { pos: usize, via: usize },
}

fn check_path(d: &AlgebroidData, p: &[usize]) -> Result<()> {
    let Some(&first) = p.first() else {
        return Err(Error::InvalidData("empty path".into()));
    };
    if first >= d.complex().nvertices() {
        return Err(Error::InvalidData(format!("unknown vertex {first}")));
    }
    for w in p.windows(2) {
        if !d.complex().has_edge(w[0], w[1]) {
            return Err(Error::NotAnEdge(w[0], w[1]));
        }
    }
    Ok(())
}

/// Transports `e ∈ a_i` back to `a_x` along the reverse of `prefix`
/// (a path from `x` to `i`).
fn pull_back(d: &AlgebroidData, prefix: &[usize], e: &Element) -> Result<Element> {
    let rev: Vec<usize> = prefix.iter().rev().copied().collect();
    Ok(apply(&holonomy(d, &rev)?, e))
}

/// Applies one move, returning the new path and the unit it contributes in
/// the algebra at the start of the path.
fn step(d: &AlgebroidData, p: &[usize], mv: Move) -> Result<(Vec<usize>, Element)> {
    let x = p[0];
    let one = d.algebra(x).unit().clone();
    let bad = || Error::InvalidData(format!("move {mv:?} does not apply to path {p:?}"));
    match mv {
        Move::Contract { pos } => {
            if pos + 2 >= p.len() {
                return Err(bad());
            }
            let (i, j, k) = (p[pos], p[pos + 1], p[pos + 2]);
            let mut q = p[..=pos].to_vec();
            if i == k {
                q.extend_from_slice(&p[pos + 3..]);
                return Ok((q, one));
            }
            if !d.complex().has_face(i, j, k) {
                return Err(bad());
            }
            q.extend_from_slice(&p[pos + 2..]);
            let u = pull_back(d, &p[..=pos], d.face_unit(i, j, k)?)?;
            Ok((q, u))
        }
        Move::Expand { pos, via } => {
            if pos + 1 >= p.len() || !d.complex().has_face(p[pos], via, p[pos + 1]) {
                return Err(bad());
            }
            let (i, k) = (p[pos], p[pos + 1]);
            let mut q = p[..=pos].to_vec();
            q.push(via);
            q.extend_from_slice(&p[pos + 1..]);
            let inv = d.algebra(i).inverse(d.face_unit(i, via, k)?)?;
            let u = pull_back(d, &p[..=pos], &inv)?;
            Ok((q, u))
        }
        Move::Spike { pos, via } => {
            if pos >= p.len() || !d.complex().has_edge(p[pos], via) {
                return Err(bad());
            }
            let mut q = p[..=pos].to_vec();
            q.extend([via, p[pos]]);
            q.extend_from_slice(&p[pos + 1..]);
            Ok((q, one))
        }
    }
}

/// Follows an explicit sequence of moves from `p1`, returning the final path
/// and the accumulated unit `u(p1, p_end) ∈ a_x`.
pub fn path_compare_along(d: &AlgebroidData, p1: &[usize], moves: &[Move]) -> Result<(Vec<usize>, Element)> {
    check_path(d, p1)?;
    let alg = d.algebra(p1[0]);
    let mut path = p1.to_vec();
    let mut u = alg.unit().clone();
    for &mv in moves {
        let (next, s) = step(d, &path, mv)?;
        u = alg.mul(&s, &u);
        path = next;
    }
    Ok((path, u))
}

fn neighbours(d: &AlgebroidData, p: &[usize], max_len: usize) -> Vec<(Move, Vec<usize>)> {
    let c = d.complex();
    let mut out = Vec::new();
    for pos in 0..p.len().saturating_sub(2) {
        let (i, j, k) = (p[pos], p[pos + 1], p[pos + 2]);
        if i == k || c.has_face(i, j, k) {
            let mut q = p[..=pos].to_vec();
            q.extend_from_slice(if i == k { &p[pos + 3..] } else { &p[pos + 2..] });
            out.push((Move::Contract { pos }, q));
        }
    }
    if p.len() < max_len {
        for pos in 0..p.len() - 1 {
            for via in c.neighbours(p[pos]) {
                if c.has_face(p[pos], via, p[pos + 1]) {
                    let mut q = p[..=pos].to_vec();
                    q.push(via);
                    q.extend_from_slice(&p[pos + 1..]);
                    out.push((Move::Expand { pos, via }, q));
                }
            }
        }
    }
    if p.len() + 1 < max_len {
        for pos in 0..p.len() {
            for via in c.neighbours(p[pos]) {
                let mut q = p[..=pos].to_vec();
                q.extend([via, p[pos]]);
                q.extend_from_slice(&p[pos + 1..]);
                out.push((Move::Spike { pos, via }, q));
            }
        }
    }
    out
}

fn find_moves(d: &AlgebroidData, p1: &[usize], p2: &[usize]) -> Result<Vec<Move>> {
    let max_len = p1.len().max(p2.len()) + 2;
    let mut parent: BTreeMap<Vec<usize>, Option<(Vec<usize>, Move)>> = BTreeMap::from([(p1.to_vec(), None)]);
    let mut queue = VecDeque::from([p1.to_vec()]);
    while let Some(p) = queue.pop_front() {
        if p == p2 {
            let mut moves = Vec::new();
            let mut cur = p;
            while let Some(Some((prev, mv))) = parent.get(&cur) {
                moves.push(*mv);
                cur = prev.clone();
            }
            moves.reverse();
            return Ok(moves);
        }
        for (mv, q) in neighbours(d, &p, max_len) {
            if !parent.contains_key(&q) {
                parent.insert(q.clone(), Some((p.clone(), mv)));
                queue.push_back(q);
            }
        }
    }
    Err(Error::NotHomotopic)
}

/// The unit `u(p1, p2) ∈ a_x` identifying two edge paths from `x` to `y`.
/// The homotopy is found by breadth-first search over paths at most two
/// vertices longer than the longer input.
pub fn path_compare(d: &AlgebroidData, p1: &[usize], p2: &[usize]) -> Result<Element> {
    check_path(d, p1)?;
    check_path(d, p2)?;
    if p1[0] != p2[0] || p1.last() != p2.last() {
        return Err(Error::NotHomotopic);
    }
    let moves = find_moves(d, p1, p2)?;
    Ok(path_compare_along(d, p1, &moves)?.1)
}

/// Morphisms `x → y` in the associated category, modelled on `a_x` along a
/// fixed breadth-first tree path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub source: usize,
    pub target: usize,
    pub path: Vec<usize>,
    pub rank: usize,
}

pub fn hom_space(d: &AlgebroidData, x: usize, y: usize) -> Result<HomSpace> {
    let path = d.complex().tree_path(x, y)?;
    Ok(HomSpace {
        source: x,
        target: y,
        path,
        rank: d.algebra(x).rank(),
    })
}

/// Composes `k : y → z` after `h : x → y`. The result is
/// `u(T_xy·T_yz, T_xz) · hol(T_xy)⁻¹(k) · h` in `a_x`.
pub fn hom_compose(d: &AlgebroidData, x: usize, y: usize, z: usize, k: &Element, h: &Element) -> Result<Element> {
    let txy = hom_space(d, x, y)?.path;
    let tyz = hom_space(d, y, z)?.path;
    let txz = hom_space(d, x, z)?.path;
    let alg = d.algebra(x);
    if h.len() != alg.rank() || k.len() != d.algebra(y).rank() {
        return Err(Error::InvalidData("morphism has the wrong rank".into()));
    }
    let mut joined = txy.clone();
    joined.extend_from_slice(&tyz[1..]);
    let u = path_compare(d, &joined, &txz)?;
    let moved = pull_back(d, &txy, k)?;
    Ok(alg.mul(&alg.mul(&u, &moved), h))
}

#[cfg(test)]
mod tests {
    use super::super::{central_twist, SCAlgebra, SimplicialComplex};
    use super::*;
    use crate::rational::rat;
    use crate::trunc::Trunc;

    fn model(complex: SimplicialComplex, order: usize) -> AlgebroidData {
        let alg = SCAlgebra::matrix_algebra(2, order);
        let mut f = BTreeMap::new();
        for (n, &[i, j]) in complex.edges().enumerate() {
            let mut e = alg.unit().clone();
            e[1] = Trunc::scalar(order, rat(n as i64 + 2));
            e[3] = Trunc::scalar(order, rat(j as i64 + 1)).add(&Trunc::monomial(order, 1, rat(i as i64)));
            f.insert((i, j), e);
        }
        AlgebroidData::from_transport(complex, &alg, &f, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn single_face_contraction_is_the_face_unit() {
        let d = model(SimplicialComplex::full_simplex(2), 2);
        assert_eq!(
            &path_compare(&d, &[0, 1, 2], &[0, 2]).unwrap(),
            d.face_unit(0, 1, 2).unwrap()
        );
        assert!(d.algebra(0).is_one(&path_compare(&d, &[0, 1, 0], &[0]).unwrap()));
    }

    #[test]
    fn comparison_is_independent_of_route() {
        let d = model(SimplicialComplex::full_simplex(3), 1);
        let alg = d.algebra(0);
        let p1 = [0, 1, 2, 3];
        let p2 = [0, 3];
        let direct = path_compare(&d, &p1, &p2).unwrap();
        let via_02 = alg.mul(
            &path_compare(&d, &[0, 2, 3], &p2).unwrap(),
            &path_compare(&d, &p1, &[0, 2, 3]).unwrap(),
        );
        let via_013 = alg.mul(
            &path_compare(&d, &[0, 1, 3], &p2).unwrap(),
            &path_compare(&d, &p1, &[0, 1, 3]).unwrap(),
        );
        assert_eq!(direct, via_02);
        assert_eq!(direct, via_013);
        let back = path_compare(&d, &p2, &p1).unwrap();
        assert!(alg.is_one(&alg.mul(&back, &direct)));
    }

    #[test]
    fn holes_block_homotopies() {
        let circle = SimplicialComplex::new(3, [[0, 1], [1, 2], [0, 2]], [], []).unwrap();
        let d = model(circle, 1);
        assert_eq!(path_compare(&d, &[0, 1, 2], &[0, 2]), Err(Error::NotHomotopic));
    }

    #[test]
    fn composition_is_associative_and_unital() {
        let mut cochain = BTreeMap::new();
        cochain.insert([0, 1, 2], rat(1));
        cochain.insert([0, 1, 3], rat(1));
        let base = model(SimplicialComplex::full_simplex(3), 2);
        let d = base.twist_faces(&central_twist(&cochain, 2, 1).unwrap()).unwrap();
        let alg = d.algebra(0);
        let mut h = alg.unit().clone();
        h[1] = Trunc::scalar(2, rat(3));
        let mut k = alg.unit().clone();
        k[2] = Trunc::monomial(2, 1, rat(-1));
        let mut l = alg.unit().clone();
        l[0] = Trunc::scalar(2, rat(5));
        let (x, y, z, w) = (0, 2, 1, 3);
        let lk = hom_compose(&d, y, z, w, &l, &k).unwrap();
        let left = hom_compose(&d, x, y, w, &lk, &h).unwrap();
        let kh = hom_compose(&d, x, y, z, &k, &h).unwrap();
        let right = hom_compose(&d, x, z, w, &l, &kh).unwrap();
        assert_eq!(left, right);
        let id = alg.unit().clone();
        assert_eq!(hom_compose(&d, x, y, y, &id, &h).unwrap(), h);
    }
}
