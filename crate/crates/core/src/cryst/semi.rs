use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::affine::{add, affine_jordan_with, apply, splitting, sub, vector_strings, zero_vector, AffineElement, Splitting, Vector};
use super::group::{AffineEmbedding, CrystGroup};
use crate::error::{Error, Result};
use crate::exactlin::{coordinates, lattice_basis, smith_normal_form_bounded, solve_integer, IntegerMatrix};

/// Upper bound on the number of representatives enumerated per group.
pub const REPRESENTATIVE_CAP: usize = 1_000_000;

/// A semisimple factor together with a group element it is the factor of.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiFactor {
    pub semisimple: AffineElement,
    pub witness: AffineElement,
}

/// Semisimple factors with a fixed holonomy S, up to conjugation by translations.
///
/// They form a torsor under `P / (S − I)Γ_u`, where `P` is the projection of
/// the translation lattice to `W_S`. Representatives are indexed by
/// `y ∈ ∏ [0, d_i)` in Smith coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct SemiFactorComponent {
    pub holonomy: IntegerMatrix,
    pub w_s_dim: usize,
    pub invariant_factors: Vec<u64>,
    pub count: usize,
    pub representatives: Vec<SemiFactor>,
    #[serde(skip)]
    split: Splitting,
    /// `W_S`-coordinates of the projected translation of the holonomy lift.
    #[serde(skip)]
    offset: Vector,
    /// ℤ-basis of `P`, in `W_S`-coordinates.
    #[serde(skip)]
    p_basis: Vec<Vector>,
    #[serde(skip)]
    u: IntegerMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct SemiFactorSet {
    pub m: usize,
    pub translation_lattice: Vec<Vec<String>>,
    pub holonomy_order: usize,
    pub total: usize,
    pub components: Vec<SemiFactorComponent>,
}

/// Mixed-radix enumeration of `∏ [0, d_i)`, first coordinate fastest.
fn index_to_digits(mut index: usize, radices: &[u64]) -> Vec<u64> {
    radices
        .iter()
        .map(|&d| {
            let digit = index as u64 % d;
            index /= d as usize;
            digit
        })
        .collect()
}

fn digits_to_index(digits: &[u64], radices: &[u64]) -> usize {
    digits.iter().zip(radices).rev().fold(0usize, |acc, (&y, &d)| acc * d as usize + y as usize)
}

fn rational_int(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn to_integers(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

impl SemiFactorComponent {
    fn p_coordinates(&self, ambient_w_s: &[BigRational]) -> Result<Vec<BigInt>> {
        let w = self.split.w_s_coordinates(ambient_w_s).ok_or_else(|| Error::Malformed("vector not in W_S".into()))?;
        let rel = sub(&w, &self.offset);
        coordinates(&self.p_basis, &rel)
            .and_then(|c| to_integers(&c))
            .ok_or_else(|| Error::Malformed("semisimple factor is not in this component".into()))
    }

    /// Index of the representative equivalent to the semisimple part `t_s`.
    fn index_of(&self, t_s: &[BigRational]) -> Result<usize> {
        if self.w_s_dim == 0 {
            return Ok(0);
        }
        let c = self.p_coordinates(t_s)?;
        let y = self.u.mul_vec(&c)?;
        let digits: Vec<u64> = y
            .iter()
            .zip(&self.invariant_factors)
            .map(|(yi, &d)| yi.mod_floor(&BigInt::from(d)).to_u64().expect("reduced"))
            .collect();
        Ok(digits_to_index(&digits, &self.invariant_factors))
    }
}

impl SemiFactorSet {
    /// `(component, representative)` indices for the semisimple factor of `e`,
    /// or an error if `e` is not in the group.
    pub fn locate(&self, group: &CrystGroup, e: &AffineElement) -> Result<(usize, usize)> {
        if !group.contains(e) {
            return Err(Error::Malformed("element is not in the group".into()));
        }
        let ci = self
            .components
            .iter()
            .position(|c| c.holonomy == e.s)
            .ok_or_else(|| Error::Malformed("holonomy not in θ".into()))?;
        let comp = &self.components[ci];
        let (semi, _) = affine_jordan_with(e, &comp.split)?;
        Ok((ci, comp.index_of(&semi.t)?))
    }

    pub fn representatives(&self) -> impl Iterator<Item = &SemiFactor> {
        self.components.iter().flat_map(|c| &c.representatives)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// One representative per class of semisimple factors modulo conjugation by
/// the translation subgroup, grouped by holonomy, with the finite quotient
/// `P / (S − I)Γ_u` described by its Smith invariant factors.
pub fn semifactor_representatives(group: &CrystGroup) -> Result<SemiFactorSet> {
    let m = group.dim();
    let lattice = group.translation_lattice();
    let bits = group.bit_bound();
    let mut components = Vec::new();
    let mut total = 0usize;
    for (s, lift) in group.holonomy_entries() {
        let split = splitting(s)?;
        let k = split.w_s.len();
        let (t_proj, _) = split.decompose(&lift.t);
        let offset = split.w_s_coordinates(&t_proj).expect("projection lies in W_S");
        if k == 0 {
            let semisimple = AffineElement { t: zero_vector(m), s: s.clone() };
            components.push(SemiFactorComponent {
                holonomy: s.clone(),
                w_s_dim: 0,
                invariant_factors: Vec::new(),
                count: 1,
                representatives: vec![SemiFactor { semisimple, witness: lift.clone() }],
                split,
                offset,
                p_basis: Vec::new(),
                u: IntegerMatrix::zeros(0, 0),
            });
            total += 1;
            continue;
        }
        // W_S-coordinates of the projections of the lattice basis, and of (S − I)λ.
        let proj: Vec<Vector> =
            lattice.iter().map(|l| split.w_s_coordinates(&split.decompose(l).0).expect("in W_S")).collect();
        let moved: Vec<Vector> = lattice
            .iter()
            .map(|l| split.w_s_coordinates(&sub(&apply(s, l), l)).expect("(S - I)λ lies in W_S"))
            .collect();
        let p_basis = lattice_basis(&proj, bits)?;
        debug_assert_eq!(p_basis.len(), k);
        let in_p = |v: &Vector| -> Vec<BigInt> {
            to_integers(&coordinates(&p_basis, v).expect("in span of P")).expect("P contains the projected lattice")
        };
        let q_cols: Vec<Vec<BigInt>> = proj.iter().map(in_p).collect();
        let m_cols: Vec<Vec<BigInt>> = moved.iter().map(in_p).collect();
        let q = IntegerMatrix::from_fn(k, m, |i, j| q_cols[j][i].clone());
        let mm = IntegerMatrix::from_fn(k, m, |i, j| m_cols[j][i].clone());
        let snf = smith_normal_form_bounded(&mm, bits)?;
        let diag = snf.diagonal();
        if diag.iter().any(Zero::is_zero) {
            return Err(Error::Malformed("S − I is not injective on W_S".into()));
        }
        let factors: Vec<u64> = diag
            .iter()
            .map(|d| d.to_u64().ok_or(Error::BudgetExceeded { cap: REPRESENTATIVE_CAP, reached: usize::MAX }))
            .collect::<Result<_>>()?;
        let count = factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize)).unwrap_or(usize::MAX);
        if total.saturating_add(count) > REPRESENTATIVE_CAP {
            return Err(Error::BudgetExceeded { cap: REPRESENTATIVE_CAP, reached: total.saturating_add(count) });
        }
        let u_inv = snf.u.unimodular_inverse()?;
        let mut representatives = Vec::with_capacity(count);
        for index in 0..count {
            let y: Vec<BigInt> = index_to_digits(index, &factors).into_iter().map(BigInt::from).collect();
            let c = u_inv.mul_vec(&y)?;
            let mut w = offset.clone();
            for (ci, p) in c.iter().zip(&p_basis) {
                w = add(&w, &p.iter().map(|x| x * rational_int(ci)).collect::<Vector>());
            }
            let t_s = split.w_s.iter().zip(&w).fold(zero_vector(m), |acc, (b, wi)| {
                add(&acc, &b.iter().map(|x| x * wi).collect::<Vector>())
            });
            let a = solve_integer(&q, &c, bits)?.expect("P is the projection of the lattice");
            let lambda = lattice.iter().zip(&a).fold(zero_vector(m), |acc, (l, ai)| {
                add(&acc, &l.iter().map(|x| x * rational_int(ai)).collect::<Vector>())
            });
            let witness = AffineElement::translation(lambda).compose(lift);
            let semisimple = AffineElement { t: t_s, s: s.clone() };
            debug_assert_eq!(affine_jordan_with(&witness, &split).unwrap().0, semisimple);
            representatives.push(SemiFactor { semisimple, witness });
        }
        total += count;
        components.push(SemiFactorComponent {
            holonomy: s.clone(),
            w_s_dim: k,
            invariant_factors: factors,
            count,
            representatives,
            split,
            offset,
            p_basis,
            u: snf.u,
        });
    }
    Ok(SemiFactorSet {
        m,
        translation_lattice: lattice.iter().map(|v| vector_strings(v)).collect(),
        holonomy_order: group.holonomy_size(),
        total,
        components,
    })
}

/// The group and its semisimple-factor representatives embedded in GL(m+1, ℤ)
/// with one common scale.
#[derive(Debug, Clone)]
pub struct GlLift {
    pub embedding: AffineEmbedding,
    /// Images of all group generators (given ones, then the lattice basis).
    pub generators: Vec<IntegerMatrix>,
    /// Images of the representatives, in the order of [`SemiFactorSet::representatives`].
    pub representatives: Vec<IntegerMatrix>,
}

/// Builds the common integral embedding and hands it to `op`.
pub fn lift_to_gl<T>(group: &CrystGroup, set: &SemiFactorSet, op: impl FnOnce(&GlLift) -> Result<T>) -> Result<T> {
    let extra: Vec<AffineElement> =
        set.representatives().flat_map(|r| [r.semisimple.clone(), r.witness.clone()]).collect();
    let embedding = group.embedding(&extra)?;
    let generators = group.all_generators().iter().map(|g| embedding.embed(g)).collect::<Result<Vec<_>>>()?;
    let representatives =
        set.representatives().map(|r| embedding.embed(&r.semisimple)).collect::<Result<Vec<_>>>()?;
    op(&GlLift { embedding, generators, representatives })
}
