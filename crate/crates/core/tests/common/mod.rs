#![allow(dead_code)]

use dquant::poly::{Bivector, Monomial, Poly};
use dquant::rational::rat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial with small integer coefficients in the given degree range.
pub fn random_poly(rng: &mut TestRng, n: usize, lo: u32, hi: u32, density: f64) -> Poly {
    let mut p = Poly::zero(n);
    for m in Monomial::all_in_degrees(n, lo, hi) {
        if rng.gen_bool(density) {
            let c: i64 = rng.gen_range(-3..=3);
            p.add_term(m, rat(c));
        }
    }
    p
}

pub fn random_homogeneous(rng: &mut TestRng, n: usize, d: u32, density: f64) -> Poly {
    random_poly(rng, n, d, d, density)
}

pub fn random_constant_bivector(rng: &mut TestRng, n: usize) -> Bivector {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push((i, j, Poly::constant(n, rat(rng.gen_range(-4..=4)))));
        }
    }
    Bivector::from_entries(n, entries).unwrap()
}

/// Arbitrary bivector with entries of degree `lo..=hi`; rarely Poisson in 3D.
pub fn random_bivector(rng: &mut TestRng, n: usize, lo: u32, hi: u32, density: f64) -> Bivector {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push((i, j, random_poly(rng, n, lo, hi, density)));
        }
    }
    Bivector::from_entries(n, entries).unwrap()
}

/// The 3D bivector with vector field `v = (γ^{23}, γ^{31}, γ^{12})`.
pub fn from_vector_field(v: [Poly; 3]) -> Bivector {
    let [v1, v2, v3] = v;
    Bivector::from_entries(3, [(1, 2, v1), (0, 2, -v2), (0, 1, v3)]).unwrap()
}

/// `v = g ∇C` is always Poisson in 3D. Degrees of `g` and `C` are chosen so
/// that entries are homogeneous of degree `deg_g + deg_c − 1`.
pub fn poisson_3d(rng: &mut TestRng, deg_g: u32, deg_c: u32) -> Bivector {
    loop {
        let g = random_homogeneous(rng, 3, deg_g, 0.7);
        let c = random_homogeneous(rng, 3, deg_c, 0.6);
        let v = [0, 1, 2].map(|i| &g * &c.partial(i).unwrap());
        let b = from_vector_field(v);
        if !b.is_zero() {
            return b;
        }
    }
}

/// Random quadratic Poisson bracket on `n ∈ {2, 3}` variables.
pub fn quadratic_poisson(rng: &mut TestRng, n: usize) -> Bivector {
    match n {
        2 => loop {
            let p = random_homogeneous(rng, 2, 2, 0.7);
            if !p.is_zero() {
                return Bivector::from_entries(2, [(0, 1, p)]).unwrap();
            }
        },
        3 => {
            if rng.gen_bool(0.5) {
                poisson_3d(rng, 1, 2)
            } else {
                poisson_3d(rng, 0, 3)
            }
        }
        _ => panic!("unsupported dimension"),
    }
}

/// Random Poisson bracket on 3 variables with entries of degree ≤ 2 (mixed).
pub fn poisson_3d_low_degree(rng: &mut TestRng) -> Bivector {
    loop {
        let g = random_poly(rng, 3, 0, 1, 0.5);
        let c = random_poly(rng, 3, 1, 2, 0.5);
        let v = [0, 1, 2].map(|i| &g * &c.partial(i).unwrap());
        if v.iter().all(|p| p.degree().is_none_or(|d| d <= 2)) {
            let b = from_vector_field(v);
            if !b.is_zero() {
                return b;
            }
        }
    }
}

pub fn x(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}
