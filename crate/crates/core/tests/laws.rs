use dquant::poly::{Bivector, Poly};
use dquant::rational::rat;
use dquant::star::{assoc_residual_on, moyal};
use dquant::trunc::Trunc;
use proptest::prelude::*;

const N: usize = 3;

fn poly(max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_deg, N)), 0..6)
        .prop_map(|terms| Poly::from_terms(N, terms.into_iter().map(|(c, e)| (rat(c), e))).unwrap())
}

fn trunc(order: usize) -> impl Strategy<Value = Trunc> {
    prop::collection::vec(-4i64..=4, order + 1)
        .prop_map(|v| Trunc::from_coeffs(v.into_iter().map(rat).collect()).unwrap())
}

fn constant_bivector() -> impl Strategy<Value = Bivector> {
    prop::collection::vec(-3i64..=3, 3).prop_map(|v| {
        Bivector::from_entries(
            N,
            [
                (0, 1, Poly::constant(N, rat(v[0]))),
                (0, 2, Poly::constant(N, rat(v[1]))),
                (1, 2, Poly::constant(N, rat(v[2]))),
            ],
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn ring_laws(a in poly(3), b in poly(3), c in poly(3)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
    }

    #[test]
    fn partials_obey_leibniz(a in poly(3), b in poly(3), i in 0..N) {
        let lhs = (&a * &b).partial(i).unwrap();
        let rhs = &(&a.partial(i).unwrap() * &b) + &(&a * &b.partial(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_recombines(a in poly(3), b in poly(2)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!((&a * &b).div_rem(&b).unwrap().1.is_zero());
    }

    #[test]
    fn bracket_is_a_biderivation(g in constant_bivector(), a in poly(2), b in poly(2), c in poly(2)) {
        let br = |f: &Poly, h: &Poly| g.bracket(f, h).unwrap();
        prop_assert_eq!(br(&a, &b), -br(&b, &a));
        prop_assert_eq!(br(&a, &(&b * &c)), &(&br(&a, &b) * &c) + &(&b * &br(&a, &c)));
    }

    #[test]
    fn truncated_units_invert(mut t in trunc(4)) {
        if t.coeff(0) == &rat(0) {
            t = t.add(&Trunc::one(4));
        }
        let inv = t.inverse().unwrap();
        prop_assert!(t.mul(&inv).is_one());
        let h = Trunc::monomial(4, 1, rat(1));
        prop_assert!(h.exp().unwrap().mul(&h.neg().exp().unwrap()).is_one());
    }

    #[test]
    fn moyal_associative_on_samples(g in constant_bivector(), a in poly(2), b in poly(2), c in poly(2)) {
        let s = moyal(&g, 4).unwrap();
        for k in 0..=4 {
            prop_assert!(assoc_residual_on(&s, k, &a, &b, &c).unwrap().is_zero());
        }
    }
}
