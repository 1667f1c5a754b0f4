use std::collections::BTreeMap;

use dquant::algebroid::{
    cech_cohomology, central_twist, coboundary_2, gauge_fix, holonomy, orientations, verify_algebroid, AlgebroidData,
    Element, GaugeOutcome, SCAlgebra, SimplicialComplex,
};
use dquant::json::{parse_json, to_json_string, AlgebroidJson};
use dquant::rational::{rat, Rat};
use dquant::trunc::Trunc;
use num_traits::Zero;
use proptest::prelude::*;

fn unipotent(alg: &SCAlgebra, upper: i64, lower_hbar: i64) -> Element {
    let o = alg.order();
    let mut e = alg.unit().clone();
    e[1] = Trunc::scalar(o, rat(upper));
    e[2] = Trunc::monomial(o, 1, rat(lower_hbar));
    e
}

fn flat(complex: &SimplicialComplex, alg: &SCAlgebra, seeds: &[(i64, i64)]) -> AlgebroidData {
    let phi: Vec<Element> = (0..complex.nvertices())
        .map(|v| unipotent(alg, seeds[v % seeds.len()].0, seeds[v % seeds.len()].1))
        .collect();
    let f = complex
        .edges()
        .map(|&[i, j]| ((i, j), alg.mul(&phi[j], &alg.inverse(&phi[i]).unwrap())))
        .collect();
    AlgebroidData::from_transport(complex.clone(), alg, &f, &BTreeMap::new()).unwrap()
}

fn delta1(complex: &SimplicialComplex, b: &BTreeMap<[usize; 2], Rat>) -> BTreeMap<[usize; 3], Rat> {
    complex
        .faces()
        .map(|&[i, j, k]| ([i, j, k], &b[&[j, k]] - &b[&[i, k]] + &b[&[i, j]]))
        .collect()
}

#[test]
fn cohomology_of_small_complexes() {
    for d in 1..=3 {
        let s = SimplicialComplex::full_simplex(d);
        for q in 1..=d {
            assert_eq!(cech_cohomology(&s, q), 0, "Δ^{d}, q = {q}");
        }
    }
    // Simplices stop at dimension 3, so Δ⁴ is its 3-skeleton, a 3-sphere.
    let s = SimplicialComplex::full_simplex(4);
    assert_eq!((1..=3).map(|q| cech_cohomology(&s, q)).collect::<Vec<_>>(), [0, 0, 1]);
    let sphere = SimplicialComplex::boundary_tetrahedron();
    assert_eq!(cech_cohomology(&sphere, 1), 0);
    assert_eq!(cech_cohomology(&sphere, 2), 1);
    let circle = SimplicialComplex::new(3, [[0, 1], [1, 2], [0, 2]], [], []).unwrap();
    assert_eq!(cech_cohomology(&circle, 1), 1);
    assert_eq!(cech_cohomology(&circle, 2), 0);
}

#[test]
fn holonomy_around_each_face_is_inner() {
    let alg = SCAlgebra::matrix_algebra(2, 2);
    let complex = SimplicialComplex::full_simplex(3);
    let d = flat(&complex, &alg, &[(1, 2), (-2, 1), (3, 0), (0, -1)]);
    let twisted = d
        .twist_faces(&central_twist(&BTreeMap::from([([0, 1, 2], rat(5))]), 2, 1).unwrap())
        .unwrap();
    for face in complex.faces() {
        for (i, j, k) in orientations(*face) {
            let hol = holonomy(&twisted, &[i, j, k, i]).unwrap();
            let a_inv = alg.inverse(twisted.face_unit(i, j, k).unwrap()).unwrap();
            assert_eq!(hol, alg.ad_matrix(&a_inv).unwrap(), "({i},{j},{k})");
        }
    }
}

#[test]
fn json_roundtrip_preserves_data() {
    let alg = SCAlgebra::matrix_algebra(2, 2);
    let complex = SimplicialComplex::full_simplex(3);
    let d = flat(&complex, &alg, &[(1, 1), (2, -3)]);
    let text = to_json_string(&AlgebroidJson::encode(&d));
    let back = parse_json::<AlgebroidJson>(&text).unwrap().decode().unwrap();
    assert_eq!(back, d);
}

#[test]
fn gauge_fix_reports_edge_units() {
    let alg = SCAlgebra::matrix_algebra(2, 2);
    let complex = SimplicialComplex::full_simplex(3);
    let b = BTreeMap::from([
        ([0, 1], rat(1)),
        ([0, 2], rat(0)),
        ([0, 3], rat(-2)),
        ([1, 2], rat(4)),
        ([1, 3], rat(0)),
        ([2, 3], rat(1)),
    ]);
    let c = delta1(&complex, &b);
    let d = flat(&complex, &alg, &[(1, 0), (2, 1)])
        .twist_faces(&central_twist(&c, 2, 1).unwrap())
        .unwrap();
    let GaugeOutcome::Fixed { data, edge_units } = gauge_fix(&d, 2).unwrap() else {
        panic!("coboundary obstructed");
    };
    assert!(verify_algebroid(&data).passed());
    assert!(
        data.face_units().values().all(|a| alg.is_one(a)),
        "exp twist is killed at every order"
    );
    assert_eq!(edge_units.len(), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundaries_are_gauge_trivial(b in prop::collection::vec(-4i64..=4, 6), s in (-3i64..=3, -3i64..=3)) {
        let alg = SCAlgebra::matrix_algebra(2, 1);
        let complex = SimplicialComplex::full_simplex(3);
        let b: BTreeMap<[usize; 2], Rat> = complex.edges().zip(&b).map(|(e, v)| (*e, rat(*v))).collect();
        let c = delta1(&complex, &b);
        prop_assert!(coboundary_2(&complex, &c).values().all(Zero::is_zero));
        let d = flat(&complex, &alg, &[s, (1, 1)]).twist_faces(&central_twist(&c, 1, 1).unwrap()).unwrap();
        prop_assert!(verify_algebroid(&d).passed());
        let fixed = gauge_fix(&d, 1).unwrap();
        prop_assert!(fixed.fixed().is_some());
    }

    #[test]
    fn sphere_classes_obstruct_unless_exact(v in prop::collection::vec(-3i64..=3, 4)) {
        let alg = SCAlgebra::matrix_algebra(2, 1);
        let sphere = SimplicialComplex::boundary_tetrahedron();
        let c: BTreeMap<[usize; 3], Rat> = sphere.faces().zip(&v).map(|(f, x)| (*f, rat(*x))).collect();
        let d = flat(&sphere, &alg, &[(1, 0)]).twist_faces(&central_twist(&c, 1, 1).unwrap()).unwrap();
        // The class of c in H² ≅ Q is the alternating sum over the faces.
        let faces: Vec<_> = sphere.faces().copied().collect();
        let pairing: Rat = faces.iter().map(|f| {
            let sign = if faces.iter().position(|g| g == f).unwrap() % 2 == 0 { 1 } else { -1 };
            &c[f] * rat(sign)
        }).sum();
        match gauge_fix(&d, 1).unwrap() {
            GaugeOutcome::Fixed { .. } => prop_assert!(pairing.is_zero()),
            GaugeOutcome::Obstructed(o) => {
                prop_assert!(!pairing.is_zero());
                prop_assert_eq!(o.h2_rank, 1);
            }
        }
    }
}
