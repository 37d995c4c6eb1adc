mod common;

use common::*;
use locoh_core::multipoly::lex_less;
use locoh_core::presentation::inverse_action;
use locoh_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_ring(rng: &mut ChaCha8Rng) -> CoefficientRing {
    match rng.gen_range(0..3) {
        0 => CoefficientRing::new(ScalarDomain::Integers, 0),
        1 => CoefficientRing::new(ScalarDomain::prime_field(5).unwrap(), 2),
        _ => CoefficientRing::new(ScalarDomain::prime_field(2).unwrap(), 2),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn presentation_has_maximal_rank(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = random_ring(&mut rng);
        let s = rng.gen_range(2..=3);
        let delta = rng.gen_range(1..=3);
        let xdeg = if ring.x_vars == 0 { 0 } else { rng.gen_range(0..=2) };
        let terms = rng.gen_range(1..=4);
        let f = random_nonzero_generator(&mut rng, ring, s, delta, xdeg, terms);
        let d = rng.gen_range(s as u32..=s as u32 + 3);
        let pm = presentation_matrix(&ideal(ring, s, vec![f]), d).unwrap();
        prop_assert_eq!(pm.matrix().rank() as u64, binom(d as u64 - 1, s as u64 - 1));
    }

    #[test]
    fn block_shapes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = CoefficientRing::new(ScalarDomain::Rationals, 1);
        let s = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=3);
        let gens: Vec<_> = (0..count)
            .map(|_| {
                let delta = rng.gen_range(1..=3);
                random_nonzero_generator(&mut rng, ring, s, delta, 1, 2)
            })
            .collect();
        let d = rng.gen_range(s as u32..=s as u32 + 3);
        let pm = presentation_matrix(&ideal(ring, s, gens.clone()), d).unwrap();
        prop_assert_eq!(pm.matrix().rows() as u64, binom(d as u64 - 1, s as u64 - 1));
        let mut cols = 0;
        for (block, f) in pm.column_blocks().iter().zip(&gens) {
            let delta = f.u_degree().unwrap().unwrap();
            prop_assert_eq!(block.generator_degree, delta);
            prop_assert_eq!(block.basis.len() as u64, binom((d + delta) as u64 - 1, s as u64 - 1));
            cols += block.basis.len();
        }
        prop_assert_eq!(pm.matrix().cols(), cols);
    }

    #[test]
    fn trailing_entry_of_shifted_columns(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = CoefficientRing::new(ScalarDomain::prime_field(7).unwrap(), 2);
        let s = rng.gen_range(2..=3);
        let delta = rng.gen_range(1..=2);
        let f = random_nonzero_generator(&mut rng, ring, s, delta, 1, 3);
        let d = rng.gen_range(s as u32..=s as u32 + 2);
        let pm = presentation_matrix(&ideal(ring, s, vec![f.clone()]), d).unwrap();
        // lex-smallest support monomial of f
        let (lambda0, a0) = f
            .terms()
            .min_by(|a, b| {
                if lex_less(a.0.exps(), b.0.exps()).unwrap() {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            })
            .unwrap();
        let block = &pm.column_blocks()[0];
        for (row, nu) in pm.row_basis().elements().iter().enumerate() {
            let shifted: Vec<i32> = nu.iter().zip(lambda0.exps()).map(|(&n, &l)| n - l as i32).collect();
            let col = block.basis.position(&shifted).unwrap();
            let last = (0..pm.matrix().rows()).rev().find(|&r| !pm.matrix().get(r, col).is_zero());
            prop_assert_eq!(last, Some(row));
            prop_assert_eq!(pm.matrix().get(row, col), a0);
        }
    }

    #[test]
    fn radical_contains_content(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = CoefficientRing::new(ScalarDomain::Rationals, 2);
        let delta = rng.gen_range(1..=2);
        let xdeg = rng.gen_range(1..=2);
        let f = random_nonzero_generator(&mut rng, ring, 2, delta, xdeg, 3);
        let d = rng.gen_range(2..=4u32);
        let i = ideal(ring, 2, vec![f]);
        let minors = presentation_matrix(&i, d).unwrap().minors_ideal(d as usize - 1).unwrap();
        for c in i.content_ideal() {
            prop_assert!(in_radical(ring, &c, &minors).unwrap());
        }
    }
}

#[test]
fn inverse_basis_order_and_size() {
    let b = InverseBasis::new(2, 4).unwrap();
    assert_eq!(b.elements(), &[vec![-1, -3], vec![-2, -2], vec![-3, -1]]);
    for s in 1..=4usize {
        for d in s as u32..=s as u32 + 4 {
            let b = InverseBasis::new(s, d).unwrap();
            assert_eq!(b.len() as u64, binom(d as u64 - 1, s as u64 - 1));
            // ascending: negated tuples increase lexicographically
            for w in b.elements().windows(2) {
                let a: Vec<u32> = w[0].iter().map(|&v| (-v) as u32).collect();
                let c: Vec<u32> = w[1].iter().map(|&v| (-v) as u32).collect();
                assert!(lex_less(&a, &c).unwrap());
            }
        }
    }
}

#[test]
fn inverse_action_examples() {
    let ring = CoefficientRing::new(ScalarDomain::Rationals, 2);
    let u2 = parse_nested("U^2", ring, 2).unwrap();
    assert!(inverse_action(&u2, &[-1, -1]).unwrap().is_empty());
    let f = parse_nested("Y^2*U^2", ring, 2).unwrap();
    let image = inverse_action(&f, &[-4, -1]).unwrap();
    assert_eq!(image.len(), 1);
    assert_eq!(image[&vec![-2, -1]].to_string(), "Y^2");
}
