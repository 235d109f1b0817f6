//! Multiplicative Jordan decomposition `g = g_s · g_u` over ℚ and the
//! semisimple / unipotent / torsion predicates built on top of it.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{char_poly, min_poly, IntegerMatrix, Poly, RationalMatrix};

/// Commuting semisimple and unipotent factors of an invertible rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanPair {
    pub semisimple: RationalMatrix,
    pub unipotent: RationalMatrix,
}

impl JordanPair {
    /// Checks the four defining properties against `g`.
    pub fn satisfies_axioms(&self, g: &RationalMatrix) -> Result<bool> {
        let product = self.semisimple.mul(&self.unipotent)? == *g;
        let commute = self.semisimple.commutes_with(&self.unipotent)?;
        let squarefree = min_poly(&self.semisimple)?.is_squarefree();
        Ok(product && commute && squarefree && is_unipotent(&self.unipotent)?)
    }
}

/// Newton iterations allowed before giving up. Convergence is quadratic in the
/// nilpotency index, so a handful always suffices for any dimension that fits in memory.
const MAX_NEWTON_STEPS: usize = 64;

/// Jordan–Chevalley decomposition of an invertible matrix.
///
/// The additive semisimple part `s` is the limit of the Newton iteration
/// `x ← x − f(x)·b(x)` started at `g`, where `f` is the squarefree part of the
/// characteristic polynomial and `b ≡ (f′)⁻¹ mod f`. Every iterate is a
/// polynomial in `g`, so all of them commute with `g`. Then `g_s = s` and
/// `g_u = s⁻¹·g`.
pub fn jordan_decompose(g: &RationalMatrix) -> Result<JordanPair> {
    let n = g.dim()?;
    if !g.is_invertible() {
        return Err(Error::Singular);
    }
    let f = char_poly(g)?.squarefree_part();
    let fp = f.derivative();
    let (d, _, b) = f.ext_gcd(&fp);
    debug_assert!(d.is_constant(), "squarefree part is coprime to its derivative");

    let mut x = g.clone();
    let mut converged = false;
    for _ in 0..MAX_NEWTON_STEPS {
        let fx = f.eval_matrix(&x)?;
        if fx.is_zero() {
            converged = true;
            break;
        }
        let step = fx.mul(&b.eval_matrix(&x)?)?;
        x = x.sub(&step)?;
    }
    assert!(converged, "Newton iteration for the semisimple part did not converge");

    let unipotent = x.inverse()?.mul(g)?;
    debug_assert_eq!(unipotent.rows(), n);
    Ok(JordanPair { semisimple: x, unipotent })
}

/// True iff the minimal polynomial of `g` is squarefree.
pub fn is_semisimple(g: &RationalMatrix) -> Result<bool> {
    if !g.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(min_poly(g)?.is_squarefree())
}

/// True iff `(g − I)ⁿ = 0`. The identity counts as unipotent.
pub fn is_unipotent(g: &RationalMatrix) -> Result<bool> {
    let n = g.dim()?;
    Ok(g.minus_identity()?.pow(n as u64)?.is_zero())
}

/// `jordan_decompose(h⁻¹·g·h)`.
pub fn conjugate_decomposition(g: &RationalMatrix, h: &RationalMatrix) -> Result<JordanPair> {
    jordan_decompose(&g.conjugate_by(h)?)
}

fn euler_phi(mut d: u64) -> u64 {
    let mut result = d;
    let mut p = 2;
    while p * p <= d {
        if d.is_multiple_of(p) {
            while d.is_multiple_of(p) {
                d /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if d > 1 {
        result -= result / d;
    }
    result
}

/// The `d`-th cyclotomic polynomial, as `(x^d − 1) / ∏_{e | d, e < d} Φ_e`.
pub fn cyclotomic(d: u64) -> Poly {
    assert!(d >= 1);
    let mut coeffs = vec![0i64; d as usize + 1];
    coeffs[0] = -1;
    coeffs[d as usize] = 1;
    let mut p = Poly::from_i64(&coeffs);
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        p = p.div_rem(&cyclotomic(e)).0;
    }
    p
}

/// Indices `d` (with multiplicity) such that `poly = ∏ Φ_d`, if `poly` factors
/// entirely into cyclotomic polynomials. Equivalently: every root is a root of unity.
pub fn cyclotomic_factorization(poly: &Poly) -> Option<Vec<u64>> {
    let deg = poly.degree()? as u64;
    if !poly.is_monic() || !poly.has_integer_coeffs() {
        return None;
    }
    let mut rest = poly.clone();
    let mut found = Vec::new();
    // φ(d) ≥ √(d/2), so only d ≤ 2·deg² can contribute.
    for d in 1..=2 * deg * deg + 2 {
        if euler_phi(d) > deg {
            continue;
        }
        let phi = cyclotomic(d);
        while rest.degree().unwrap_or(0) >= phi.degree().unwrap() {
            let (q, r) = rest.div_rem(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
            found.push(d);
        }
        if rest.is_constant() {
            break;
        }
    }
    (rest == Poly::one()).then_some(found)
}

/// Multiplicative order of an element of GL(n,ℤ), or `None` if it is infinite.
///
/// A finite order forces the characteristic polynomial to be a product of
/// cyclotomic polynomials `Φ_d` with `Σ φ(d) = n` and the matrix to be
/// semisimple; the order is then the lcm of those `d`, confirmed by powering.
pub fn torsion_order(g: &IntegerMatrix) -> Result<Option<u64>> {
    g.dim()?;
    let det = g.det()?;
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular { det: det.to_string() });
    }
    let q = g.to_rational();
    let Some(ds) = cyclotomic_factorization(&char_poly(&q)?) else {
        return Ok(None);
    };
    if !min_poly(&q)?.is_squarefree() {
        return Ok(None);
    }
    let order = ds.iter().fold(1u64, |acc, &d| acc.lcm(&d));
    let is_identity_at = |e: u64| -> Result<bool> { Ok(g.pow(e)?.is_identity()) };
    if !is_identity_at(order)? {
        return Ok(None);
    }
    let least = (1..=order)
        .filter(|e| order % e == 0)
        .find(|&e| is_identity_at(e).unwrap_or(false))
        .unwrap_or(order);
    Ok(Some(least))
}

/// Bounded scan for virtual unipotence.
///
/// Returns true iff every element of word length at most `wordlen` in the
/// generators and their inverses has all eigenvalues roots of unity (its
/// semisimple part is torsion). A `false` answer is a proof that the group is
/// not virtually unipotent; `true` only means "consistent up to `wordlen`".
pub fn is_virtually_unipotent_witness(gens: &[IntegerMatrix], wordlen: usize) -> Result<bool> {
    let Some(first) = gens.first() else {
        return Ok(true);
    };
    let n = first.dim()?;
    let mut letters = Vec::with_capacity(2 * gens.len());
    for g in gens {
        if g.dim()? != n {
            return Err(Error::DimensionMismatch("generators of different sizes".into()));
        }
        letters.push(g.clone());
        letters.push(g.unimodular_inverse()?);
    }
    let mut seen: HashSet<IntegerMatrix> = HashSet::new();
    let identity = IntegerMatrix::identity(n);
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    for _ in 0..wordlen {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let x = w.mul(l)?;
                if seen.insert(x.clone()) {
                    if cyclotomic_factorization(&char_poly(&x.to_rational())?).is_none() {
                        return Ok(false);
                    }
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    Ok(true)
}

/// All distinct group elements of word length at most `wordlen` in the
/// generators and their inverses, in breadth-first order.
pub fn word_ball(gens: &[IntegerMatrix], n: usize, wordlen: usize) -> Result<Vec<IntegerMatrix>> {
    let mut letters = Vec::new();
    for g in gens {
        letters.push(g.clone());
        letters.push(g.unimodular_inverse()?);
    }
    let identity = IntegerMatrix::identity(n);
    let mut seen = indexmap::IndexSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    for _ in 0..wordlen {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let x = w.mul(l)?;
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}
