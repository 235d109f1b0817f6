use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactlin::IntegerMatrix;
use crate::jordan::torsion_order;
use crate::modgrp::{conj_class, reduce, ModMatrix};

/// A torsion element together with its verified order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionRep {
    pub matrix: IntegerMatrix,
    pub order: u64,
}

fn z(rows: &[&[i64]]) -> IntegerMatrix {
    IntegerMatrix::from_i64_rows(rows)
}

fn raw_table(n: usize) -> Result<Vec<IntegerMatrix>> {
    Ok(match n {
        1 => vec![z(&[&[1]]), z(&[&[-1]])],
        2 => vec![
            z(&[&[1, 0], &[0, 1]]),
            z(&[&[-1, 0], &[0, -1]]),
            z(&[&[0, -1], &[1, 0]]),
            z(&[&[0, -1], &[1, -1]]),
            z(&[&[0, -1], &[1, 1]]),
            z(&[&[1, 0], &[0, -1]]),
            z(&[&[0, 1], &[1, 0]]),
        ],
        3 => {
            // GL(3,ℤ) = SL(3,ℤ) × {±I}; eight SL classes and their negatives.
            let sl = [
                z(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
                z(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
                z(&[&[1, 1, 0], &[0, -1, 0], &[0, 0, -1]]),
                z(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, -1]]),
                z(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
                z(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
                z(&[&[1, 0, 1], &[0, 0, -1], &[0, 1, 0]]),
                z(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 1]]),
            ];
            let mut all = sl.to_vec();
            all.extend(sl.iter().map(|g| g.neg()));
            all
        }
        _ => return Err(Error::UnsupportedDimension(n)),
    })
}

/// Checks that every matrix is square of size `n` and has finite order.
pub fn validate_torsion_reps(n: usize, reps: &[IntegerMatrix]) -> Result<Vec<TorsionRep>> {
    reps.iter()
        .map(|g| {
            if g.dim()? != n {
                return Err(Error::DimensionMismatch(format!("torsion representative is not {n}×{n}")));
            }
            let order = torsion_order(g)?.ok_or(Error::NotTorsion)?;
            Ok(TorsionRep { matrix: g.clone(), order })
        })
        .collect()
}

/// Representatives of the conjugacy classes of torsion elements of GL(n, ℤ), n ≤ 3.
///
/// Orders are recomputed on every load. Completeness is screened by tests
/// (see [`screen_table`]), not proved.
pub fn torsion_class_table(n: usize) -> Result<Vec<TorsionRep>> {
    validate_torsion_reps(n, &raw_table(n)?)
}

/// Name recorded in certificates that used the builtin table.
pub fn table_version(n: usize) -> String {
    format!("builtin-gl{n}-v1")
}

/// Finite orders occurring in GL(n, ℤ) for n ≤ 3 all divide 12.
const ORDER_LCM: u32 = 12;

fn mul_small(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum();
        }
    }
    out
}

fn det_small(n: usize, a: &[i64]) -> i64 {
    match n {
        1 => a[0],
        2 => a[0] * a[3] - a[1] * a[2],
        3 => {
            a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                + a[2] * (a[3] * a[7] - a[4] * a[6])
        }
        _ => unreachable!(),
    }
}

/// Every torsion element of GL(n, ℤ) (n ≤ 3) with entries in `[-bound, bound]`.
///
/// Detection is by `g¹² = I` in machine integers, independent of the
/// cyclotomic machinery behind [`torsion_order`]. Entries of a torsion
/// element's powers stay bounded, and a non-torsion element either overflows
/// (caught) or fails the identity test.
pub fn bounded_torsion_elements(n: usize, bound: i64) -> Result<Vec<IntegerMatrix>> {
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let width = (2 * bound + 1) as u64;
    let total = width.pow((n * n) as u32);
    let identity: Vec<i64> = (0..n * n).map(|k| i64::from(k % (n + 1) == 0)).collect();
    let mut out = Vec::new();
    let mut a = vec![0i64; n * n];
    for code in 0..total {
        let mut c = code;
        for x in a.iter_mut() {
            *x = (c % width) as i64 - bound;
            c /= width;
        }
        push_if_torsion(&mut out, n, &a, &identity);
    }
    Ok(out)
}

fn push_if_torsion(out: &mut Vec<IntegerMatrix>, n: usize, a: &[i64], identity: &[i64]) {
    if det_small(n, a).abs() != 1 {
        return;
    }
    let mut p = a.to_vec();
    for _ in 1..ORDER_LCM {
        p = mul_small(n, &p, a);
        if p.iter().any(|x| x.abs() > 1 << 20) {
            return;
        }
    }
    if p == identity {
        out.push(IntegerMatrix::from_fn(n, n, |i, j| a[i * n + j].into()));
    }
}

/// Outcome of [`screen_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScreenReport {
    pub elements_checked: usize,
    /// `(element, modulus)` pairs not conjugate mod m to any table entry.
    pub misses: Vec<(IntegerMatrix, u64)>,
}

/// Necessary-condition completeness screen: every bounded torsion element must
/// be GL(n, ℤ/m)-conjugate to the reduction of some table entry, for each `m`.
pub fn screen_table(n: usize, table: &[TorsionRep], bound: i64, moduli: &[u64], cap: usize) -> Result<ScreenReport> {
    let elements = bounded_torsion_elements(n, bound)?;
    let mut misses = Vec::new();
    for &m in moduli {
        let mut union: HashSet<ModMatrix> = HashSet::new();
        for rep in table {
            union.extend(conj_class(&reduce(&rep.matrix, m)?, cap)?.elements());
        }
        for g in &elements {
            if !union.contains(&reduce(g, m)?) {
                misses.push((g.clone(), m));
            }
        }
    }
    Ok(ScreenReport { elements_checked: elements.len(), misses })
}
