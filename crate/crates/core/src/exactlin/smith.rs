use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::{Error, Result};

/// Default ceiling on intermediate entry size during Smith reduction.
pub const DEFAULT_BIT_BOUND: u64 = 1_000_000;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with `d₁ | d₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries of `D`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries of `D`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Reducer {
    a: IntegerMatrix,
    u: IntegerMatrix,
    v: IntegerMatrix,
    bound: u64,
}

impl Reducer {
    fn check(&self) -> Result<()> {
        if self.a.max_bits() > self.bound || self.u.max_bits() > self.bound || self.v.max_bits() > self.bound {
            return Err(Error::BitBound { bound: self.bound });
        }
        Ok(())
    }

    fn swap_cols(m: &mut IntegerMatrix, a: usize, b: usize) {
        if a != b {
            for i in 0..m.rows() {
                let tmp = m[(i, a)].clone();
                m[(i, a)] = m[(i, b)].clone();
                m[(i, b)] = tmp;
            }
        }
    }

    /// row[dst] -= q * row[src] on both `a` and `u`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let v = &m[(src, j)] * q;
                m[(dst, j)] -= v;
            }
        }
    }

    /// col[dst] -= q * col[src] on both `a` and `v`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for i in 0..m.rows() {
                let v = &m[(i, src)] * q;
                m[(i, dst)] -= v;
            }
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let e = &self.a[(i, j)];
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Result<()> {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = self.smallest_nonzero(t) else {
                    return Ok(());
                };
                self.a.swap_rows(t, pi);
                self.u.swap_rows(t, pi);
                Self::swap_cols(&mut self.a, t, pj);
                Self::swap_cols(&mut self.v, t, pj);

                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.a[(i, t)].div_floor(&pivot);
                    self.row_axpy(i, t, &q);
                    clean &= self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.a[(t, j)].div_floor(&pivot);
                    self.col_axpy(j, t, &q);
                    clean &= self.a[(t, j)].is_zero();
                }
                self.check()?;
                if !clean {
                    continue;
                }
                // Pivot isolated; enforce divisibility of the remaining block.
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
                match bad {
                    Some(i) => self.row_axpy(t, i, &-BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                for m in [&mut self.a, &mut self.u] {
                    for j in 0..m.cols() {
                        m[(t, j)] = -m[(t, j)].clone();
                    }
                }
            }
        }
        Ok(())
    }
}

/// Smith normal form with the default bit bound.
pub fn smith_normal_form(a: &IntegerMatrix) -> Result<SmithDecomposition> {
    smith_normal_form_bounded(a, DEFAULT_BIT_BOUND)
}

/// Smith normal form by pivot-and-reduce, choosing the pivot of least absolute value.
///
/// Aborts with [`Error::BitBound`] if any entry of `D`, `U` or `V` grows past
/// `bit_bound` bits during the reduction.
pub fn smith_normal_form_bounded(a: &IntegerMatrix, bit_bound: u64) -> Result<SmithDecomposition> {
    let mut r = Reducer {
        a: a.clone(),
        u: IntegerMatrix::identity(a.rows()),
        v: IntegerMatrix::identity(a.cols()),
        bound: bit_bound,
    };
    r.check()?;
    r.run()?;
    Ok(SmithDecomposition { u: r.u, d: r.a, v: r.v })
}

/// A ℤ-basis of the lattice spanned by the given rational vectors.
pub fn lattice_basis(vectors: &[Vec<BigRational>], bit_bound: u64) -> Result<Vec<Vec<BigRational>>> {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let denom = vectors.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scale = BigRational::from_integer(denom.clone());
    let rows: Vec<Vec<BigInt>> =
        vectors.iter().map(|v| v.iter().map(|q| (q * &scale).to_integer()).collect()).collect();
    let m = IntegerMatrix::from_rows(&rows)?;
    // Rows of U·M = D·V⁻¹ span the same lattice as the rows of M.
    let snf = smith_normal_form_bounded(&m, bit_bound)?;
    let v_inv = snf.v.unimodular_inverse()?;
    let basis = snf
        .diagonal()
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            (0..dim)
                .map(|j| BigRational::new(d * &v_inv[(i, j)], denom.clone()))
                .collect()
        })
        .collect();
    Ok(basis)
}

/// An integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntegerMatrix, b: &[BigInt], bit_bound: u64) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let snf = smith_normal_form_bounded(a, bit_bound)?;
    let ub = snf.u.mul_vec(b)?;
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(d) if !d.is_zero() => {
                if !c.is_multiple_of(d) {
                    return Ok(None);
                }
                y[i] = c / d;
            }
            _ => {
                if !c.is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}
