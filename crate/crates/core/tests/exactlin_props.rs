mod common;

use common::{random_matrix, random_unimodular, rng};
use congrusep::exactlin::{
    char_poly, kernel_and_image, mat_inverse, mat_mul, min_poly, smith_normal_form, IntegerMatrix, RationalMatrix,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cayley_hamilton(seed in any::<u64>(), n in 1usize..=4) {
        let a = random_matrix(&mut rng(seed), n, 5).to_rational();
        let p = char_poly(&a).unwrap();
        prop_assert_eq!(p.degree(), Some(n));
        prop_assert!(p.is_monic());
        prop_assert!(p.eval_matrix(&a).unwrap().is_zero());
    }

    #[test]
    fn min_poly_divides_char_poly(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        // Low-rank perturbations of scalars give repeated eigenvalues often.
        let base = random_matrix(&mut r, n, 2);
        let a = if seed % 2 == 0 { base } else { base.mul(&base).unwrap() }.to_rational();
        let mp = min_poly(&a).unwrap();
        prop_assert!(mp.is_monic());
        prop_assert!(mp.eval_matrix(&a).unwrap().is_zero());
        prop_assert!(char_poly(&a).unwrap().is_divisible_by(&mp));
    }

    #[test]
    fn unimodular_inverse_exact(seed in any::<u64>(), n in 1usize..=4) {
        let a = random_unimodular(&mut rng(seed), n, 12).to_rational();
        let inv = mat_inverse(&a).unwrap();
        prop_assert!(mat_mul(&a, &inv).unwrap().is_identity());
        prop_assert!(inv.is_integral());
    }

    #[test]
    fn smith_invariants(seed in any::<u64>(), rows in 1usize..=4, cols in 1usize..=4) {
        let mut r = rng(seed);
        let a = IntegerMatrix::from_fn(rows, cols, |_, _| BigInt::from(r.random_range(-6i64..=6)));
        let s = smith_normal_form(&a).unwrap();
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.det().unwrap().abs() == BigInt::from(1));
        prop_assert!(s.v.det().unwrap().abs() == BigInt::from(1));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        if rows == cols {
            let det = a.det().unwrap().abs();
            let prod = diag.iter().fold(BigInt::from(1), |acc, d| acc * d);
            prop_assert_eq!(prod, det);
        }
    }

    #[test]
    fn kernel_image_dimensions(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let mut a = random_matrix(&mut r, n, 2);
        // Force rank deficiency half the time by repeating the first row.
        if seed % 2 == 0 {
            for j in 0..n {
                a[(n - 1, j)] = a[(0, j)].clone();
            }
        }
        let q: RationalMatrix = a.to_rational();
        let ki = kernel_and_image(&q);
        prop_assert_eq!(ki.kernel.len() + ki.image.len(), n);
        for v in &ki.kernel {
            prop_assert!(q.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }
}
