//! Random instance generators shared by the integration tests.

#![allow(dead_code)]

use locoh_core::{CoefficientRing, GradedIdeal, Monomial, NestedPolynomial, Poly, ScalarDomain};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All exponent vectors of length `n` summing to `deg`.
pub fn exponent_vectors(n: usize, deg: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    if n == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in exponent_vectors(n - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn scalar(ring: CoefficientRing, v: i64) -> BigRational {
    ring.base.normalize(&BigRational::from_integer(BigInt::from(v))).unwrap()
}

fn random_scalar(rng: &mut ChaCha8Rng, base: ScalarDomain) -> i64 {
    match base {
        // small values, often sharing factors, so the gcd is not always 1
        ScalarDomain::Integers => {
            let v: i64 = [2, 3, 4, 6, 9, 1][rng.gen_range(0..6)];
            if rng.gen_bool(0.5) {
                v
            } else {
                -v
            }
        }
        _ => rng.gen_range(-4..=4),
    }
}

/// A random homogeneous element of `R_0` of degree `deg` with at most `terms` terms.
pub fn random_coefficient(rng: &mut ChaCha8Rng, ring: CoefficientRing, deg: u32, terms: usize) -> Poly {
    let monos = exponent_vectors(ring.x_vars, deg);
    let mut p = ring.zero();
    for _ in 0..terms {
        let c = scalar(ring, random_scalar(rng, ring.base));
        let mono = Monomial::new(monos[rng.gen_range(0..monos.len())].clone());
        p.add_term(mono, &c);
    }
    p
}

/// A random U-homogeneous polynomial of U-degree `delta` whose coefficients are
/// homogeneous of X-degree `xdeg`.
pub fn random_generator(
    rng: &mut ChaCha8Rng,
    ring: CoefficientRing,
    s: usize,
    delta: u32,
    xdeg: u32,
    terms: usize,
) -> NestedPolynomial {
    let umonos = exponent_vectors(s, delta);
    let mut f = NestedPolynomial::zero(ring, s);
    for _ in 0..terms {
        let u = Monomial::new(umonos[rng.gen_range(0..umonos.len())].clone());
        f.add_term(u, random_coefficient(rng, ring, xdeg, 1));
    }
    f
}

/// A nonzero random generator.
pub fn random_nonzero_generator(
    rng: &mut ChaCha8Rng,
    ring: CoefficientRing,
    s: usize,
    delta: u32,
    xdeg: u32,
    terms: usize,
) -> NestedPolynomial {
    loop {
        let f = random_generator(rng, ring, s, delta, xdeg, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn ideal(ring: CoefficientRing, s: usize, gens: Vec<NestedPolynomial>) -> GradedIdeal {
    GradedIdeal::new(ring, s, gens).unwrap()
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
