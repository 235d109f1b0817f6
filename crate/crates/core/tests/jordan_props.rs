mod common;

use common::{random_unimodular, rng, z};
use congrusep::exactlin::IntegerMatrix;
use congrusep::jordan::{
    conjugate_decomposition, is_semisimple, is_virtually_unipotent_witness, jordan_decompose, torsion_order, word_ball,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equivariance(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let g = random_unimodular(&mut r, n, 8).to_rational();
        let h = random_unimodular(&mut r, n, 8).to_rational();
        let pair = jordan_decompose(&g).unwrap();
        let conj = conjugate_decomposition(&g, &h).unwrap();
        prop_assert_eq!(conj.semisimple, pair.semisimple.conjugate_by(&h).unwrap());
        prop_assert_eq!(conj.unipotent, pair.unipotent.conjugate_by(&h).unwrap());
    }

    #[test]
    fn axioms_and_determinism(seed in any::<u64>(), n in 2usize..=4) {
        let g = random_unimodular(&mut rng(seed), n, 10).to_rational();
        let pair = jordan_decompose(&g).unwrap();
        prop_assert!(pair.satisfies_axioms(&g).unwrap());
        prop_assert_eq!(jordan_decompose(&g).unwrap(), pair);
    }

    #[test]
    fn torsion_order_is_least(seed in any::<u64>()) {
        // Conjugates of finite-order table elements: orders must be preserved.
        let mut r = rng(seed);
        let h = random_unimodular(&mut r, 2, 6);
        let h_inv = h.unimodular_inverse().unwrap();
        for (base, expected) in [(z(&[&[0, -1], &[1, 0]]), 4), (z(&[&[0, -1], &[1, -1]]), 3), (z(&[&[0, -1], &[1, 1]]), 6), (z(&[&[0, 1], &[1, 0]]), 2)] {
            let g = h_inv.mul(&base).unwrap().mul(&h).unwrap();
            let order = torsion_order(&g).unwrap();
            prop_assert_eq!(order, Some(expected));
            prop_assert!(g.pow(expected).unwrap().is_identity());
            for d in (1..expected).filter(|d| expected % d == 0) {
                prop_assert!(!g.pow(d).unwrap().is_identity());
            }
        }
    }
}

#[test]
fn torsion_free_virtually_unipotent_has_no_semisimple_words() {
    let fixtures: Vec<Vec<IntegerMatrix>> = vec![
        vec![z(&[&[1, 1], &[0, 1]])],
        vec![z(&[&[1, 2], &[0, 1]])],
        // Heisenberg group.
        vec![z(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]), z(&[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]])],
        // Klein bottle group embedded in GL(3, ℤ).
        vec![z(&[&[1, 0, 1], &[0, -1, 0], &[0, 0, 1]]), z(&[&[1, 0, 0], &[0, 1, 2], &[0, 0, 1]])],
    ];
    for gens in fixtures {
        let n = gens[0].rows();
        assert!(is_virtually_unipotent_witness(&gens, 4).unwrap());
        for w in word_ball(&gens, n, 4).unwrap() {
            if !w.is_identity() {
                assert!(!is_semisimple(&w.to_rational()).unwrap(), "{w} is semisimple");
            }
        }
    }
}

#[test]
fn witness_scan_examples() {
    assert!(is_virtually_unipotent_witness(&[z(&[&[1, 1], &[0, 1]])], 5).unwrap());
    assert!(!is_virtually_unipotent_witness(&[z(&[&[2, 1], &[1, 1]])], 1).unwrap());
    assert!(is_virtually_unipotent_witness(&[IntegerMatrix::identity(2).neg()], 3).unwrap());
}
