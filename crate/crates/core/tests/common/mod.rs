#![allow(dead_code)]

use congrusep::exactlin::IntegerMatrix;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn z(rows: &[&[i64]]) -> IntegerMatrix {
    IntegerMatrix::from_i64_rows(rows)
}

/// A word of `len` elementary matrices `I ± E_ij`, times a random sign diagonal.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, len: usize) -> IntegerMatrix {
    let mut g = IntegerMatrix::identity(n);
    for _ in 0..len {
        if n == 1 {
            break;
        }
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let sign: i64 = if rng.random_bool(0.5) { 1 } else { -1 };
        let mut e = IntegerMatrix::identity(n);
        e[(i, j)] = BigInt::from(sign);
        g = g.mul(&e).unwrap();
    }
    let signs: Vec<BigInt> = (0..n).map(|_| BigInt::from(if rng.random_bool(0.5) { 1 } else { -1 })).collect();
    g.mul(&IntegerMatrix::diagonal(&signs)).unwrap()
}

/// A random n×n integer matrix with entries in `[-b, b]`.
pub fn random_matrix(rng: &mut impl Rng, n: usize, b: i64) -> IntegerMatrix {
    IntegerMatrix::from_fn(n, n, |_, _| BigInt::from(rng.random_range(-b..=b)))
}

/// All matrices in GL(2, ℤ) with entries in `[-b, b]`.
pub fn gl2_box(b: i64) -> Vec<IntegerMatrix> {
    let mut out = Vec::new();
    for a in -b..=b {
        for c in -b..=b {
            for d in -b..=b {
                for e in -b..=b {
                    if (a * e - c * d).abs() == 1 {
                        out.push(z(&[&[a, c], &[d, e]]));
                    }
                }
            }
        }
    }
    out
}
