use std::collections::BTreeMap;

use num_traits::Zero;

use super::{cech_cohomology, coboundary_2, orientations, AlgebroidData};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::trunc::Trunc;

/// A lowest-order cocycle that is not a coboundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeObstruction {
    pub order: usize,
    /// The cocycle on sorted faces.
    pub class: BTreeMap<[usize; 3], Rat>,
    pub h2_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeOutcome {
    /// Gauge-equivalent data with face units `≡ 1 mod ℏ^{m+1}`, and the
    /// central edge units `U_ij` (sorted edges) that implement the change.
    Fixed {
        data: AlgebroidData,
        edge_units: BTreeMap<[usize; 2], Trunc>,
    },
    Obstructed(GaugeObstruction),
}

impl GaugeOutcome {
    pub fn fixed(&self) -> Option<&AlgebroidData> {
        match self {
            GaugeOutcome::Fixed { data, .. } => Some(data),
            GaugeOutcome::Obstructed(_) => None,
        }
    }
}

/// The `ℏ^k` coefficient of a face unit as a multiple of the identity.
fn scalar_coefficient(d: &AlgebroidData, (i, j, k): (usize, usize, usize), order: usize) -> Result<Rat> {
    let unit = d.algebra(i).unit();
    let e = d.face_unit(i, j, k)?;
    let pivot = unit
        .iter()
        .position(|u| !u.coeff(0).is_zero())
        .ok_or_else(|| Error::InvalidData("zero algebra".into()))?;
    let lambda = e[pivot].coeff(order) / unit[pivot].coeff(0);
    let scalar = e.iter().zip(unit).all(|(x, u)| *x.coeff(order) == u.coeff(0) * &lambda);
    if scalar {
        Ok(lambda)
    } else {
        Err(Error::NonCentral(vec![i, j, k]))
    }
}

/// Removes the face units order by order up to `ℏ^m` using central edge
/// units `1 − ℏ^k b_ij`. Each face unit must already be `1` below the order
/// being fixed and its next coefficient must be a scalar; the cochain of those
/// scalars must be closed. A closed cochain that is not a coboundary is
/// returned as an obstruction.
pub fn gauge_fix(d: &AlgebroidData, m: usize) -> Result<GaugeOutcome> {
    let c = d.complex();
    let m = m.min(d.order());
    for &f in c.faces() {
        let (i, j, k) = (f[0], f[1], f[2]);
        if !d.algebra(i).is_one_mod(d.face_unit(i, j, k)?, 1) {
            return Err(Error::InvalidData(format!("face unit on {f:?} is not 1 at order 0")));
        }
    }
    let edges: Vec<[usize; 2]> = c.edges().copied().collect();
    let delta = c.coboundary_matrix(1);
    let mut data = d.clone();
    let mut edge_units: BTreeMap<[usize; 2], Trunc> = edges.iter().map(|&e| (e, Trunc::one(d.order()))).collect();

    for k in 1..=m {
        let mut cochain = BTreeMap::new();
        for &f in c.faces() {
            let lambda = scalar_coefficient(&data, (f[0], f[1], f[2]), k)?;
            cochain.insert(f, lambda);
        }
        if let Some((t, _)) = coboundary_2(c, &cochain).into_iter().find(|(_, v)| !v.is_zero()) {
            return Err(Error::NotClosed(t.to_vec()));
        }
        let rhs: Vec<Rat> = c.faces().map(|f| cochain[f].clone()).collect();
        let sol = delta.solve(&rhs);
        if !sol.consistent {
            return Ok(GaugeOutcome::Obstructed(GaugeObstruction {
                order: k,
                class: cochain.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
                h2_rank: cech_cohomology(c, 2),
            }));
        }
        let mut u: BTreeMap<(usize, usize), Trunc> = BTreeMap::new();
        for (e, b) in edges.iter().zip(&sol.x) {
            let uij = Trunc::one(d.order()).sub(&Trunc::monomial(d.order(), k, b.clone()));
            u.insert((e[1], e[0]), uij.inverse()?);
            let total = edge_units[e].mul(&uij);
            edge_units.insert(*e, total);
            u.insert((e[0], e[1]), uij);
        }
        let mut next = data.clone();
        for &f in c.faces() {
            for (i, j, l) in orientations(f) {
                let s = u[&(i, j)].mul(&u[&(j, l)]).mul(&u[&(l, i)]);
                let alg = data.algebra(i);
                let e = alg.mul(data.face_unit(i, j, l)?, &alg.scalar(&s));
                next.set_face_unit(i, j, l, e)?;
            }
        }
        data = next;
    }
    Ok(GaugeOutcome::Fixed { data, edge_units })
}
