//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision; rationals are kept in lowest terms
//! by `num_rational`. Nothing in the crate touches floating point.

mod json;
mod matrix;
mod poly;
mod smith;
mod subspace;

pub use json::{format_rational, integer_from_value, parse_integer, parse_rational, rational_from_value};
pub use matrix::{mat_inverse, mat_mul, IntegerMatrix, Matrix, RationalMatrix};
pub use poly::Poly;
pub use smith::{
    lattice_basis, smith_normal_form, smith_normal_form_bounded, solve_integer, SmithDecomposition,
    DEFAULT_BIT_BOUND,
};
pub use subspace::{coordinates, kernel_and_image, rank, rref, KernelImage};

use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;

/// Characteristic polynomial `det(x·I − a)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(a: &RationalMatrix) -> Result<Poly> {
    let n = a.dim()?;
    let mut coeffs = vec![BigRational::from_integer(0.into()); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        m = a.mul(&m)?;
        for i in 0..n {
            m[(i, i)] += &coeffs[n - k + 1];
        }
        let t = a.mul(&m)?.trace()?;
        coeffs[n - k] = -t / BigRational::from_integer(k.into());
    }
    Ok(Poly::new(coeffs))
}

/// Minimal polynomial: the first linear dependency among `I, a, a², …`.
pub fn min_poly(a: &RationalMatrix) -> Result<Poly> {
    let n = a.dim()?;
    let mut powers = vec![RationalMatrix::identity(n)];
    for k in 1..=n {
        let next = powers[k - 1].mul(a)?;
        powers.push(next);
        let cols: Vec<Vec<BigRational>> = powers.iter().map(|p| p.entries().to_vec()).collect();
        let krylov = RationalMatrix::from_columns(n * n, &cols)?;
        let ker = kernel_and_image(&krylov).kernel;
        if let Some(v) = ker.into_iter().next() {
            // The first k powers are independent, so the kernel is a line with v[k] = 1.
            return Ok(Poly::new(v).monic());
        }
    }
    unreachable!("Cayley-Hamilton bounds the minimal polynomial degree by n")
}
