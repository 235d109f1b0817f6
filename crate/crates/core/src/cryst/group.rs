use indexmap::IndexMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::affine::{apply, vector_from_value, zero_vector, AffineElement, Vector};
use crate::error::{Error, Result};
use crate::exactlin::{coordinates, lattice_basis, rank, IntegerMatrix, RationalMatrix, DEFAULT_BIT_BOUND};
use crate::jordan::{is_unipotent, torsion_order};

/// Holonomy groups larger than this are treated as infinite.
pub const HOLONOMY_CAP: usize = 10_000;

/// A crystallographic group generated by affine maps and the translations of a declared lattice.
#[derive(Debug, Clone)]
pub struct CrystGroup {
    m: usize,
    declared_lattice: Vec<Vector>,
    gens: Vec<AffineElement>,
    /// θ in breadth-first order, each with a group element mapping onto it.
    holonomy: IndexMap<IntegerMatrix, AffineElement>,
    translation_lattice: Vec<Vector>,
    bit_bound: u64,
}

fn is_integral(v: &[BigRational]) -> bool {
    v.iter().all(BigRational::is_integer)
}

fn classify_infinite(s: &IntegerMatrix) -> Result<Error> {
    Ok(if is_unipotent(&s.to_rational())? { Error::BaseCaseOnly } else { Error::HolonomyNotFinite })
}

impl CrystGroup {
    pub fn new(m: usize, lattice: Vec<Vector>, gens: Vec<AffineElement>) -> Result<Self> {
        Self::with_bit_bound(m, lattice, gens, DEFAULT_BIT_BOUND)
    }

    /// Validates the input and computes θ and the translation subgroup.
    ///
    /// Rejects a non-identity unipotent holonomy (nonabelian Fitting subgroup)
    /// with [`Error::BaseCaseOnly`] and any other infinite holonomy with
    /// [`Error::HolonomyNotFinite`].
    pub fn with_bit_bound(m: usize, lattice: Vec<Vector>, gens: Vec<AffineElement>, bit_bound: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        if lattice.len() != m || lattice.iter().any(|b| b.len() != m) {
            return Err(Error::Malformed(format!("lattice must be {m} vectors of length {m}")));
        }
        if rank(&RationalMatrix::from_rows(&lattice)?) != m {
            return Err(Error::Malformed("lattice vectors are linearly dependent".into()));
        }
        for g in &gens {
            if g.dim() != m {
                return Err(Error::DimensionMismatch(format!("generator of dimension {} in dimension {m}", g.dim())));
            }
            if torsion_order(&g.s)?.is_none() {
                return Err(classify_infinite(&g.s)?);
            }
            for b in &lattice {
                let image = apply(&g.s, b);
                if !coordinates(&lattice, &image).is_some_and(|c| is_integral(&c)) {
                    return Err(Error::Malformed("lattice is not invariant under the holonomy".into()));
                }
            }
        }

        let letters: Vec<AffineElement> =
            gens.iter().cloned().chain(lattice.iter().map(|b| AffineElement::translation(b.clone()))).collect();
        let mut holonomy: IndexMap<IntegerMatrix, AffineElement> = IndexMap::new();
        holonomy.insert(IntegerMatrix::identity(m), AffineElement::identity(m));
        let mut cursor = 0;
        while cursor < holonomy.len() {
            let rep = holonomy[cursor].clone();
            for x in &letters {
                let y = rep.compose(x);
                if !holonomy.contains_key(&y.s) {
                    if is_unipotent(&y.s.to_rational())? {
                        return Err(Error::BaseCaseOnly);
                    }
                    if holonomy.len() >= HOLONOMY_CAP {
                        return Err(Error::HolonomyNotFinite);
                    }
                    holonomy.insert(y.s.clone(), y);
                }
            }
            cursor += 1;
        }

        // Schreier generators r_S · x · r_{S·S_x}⁻¹ generate the translation subgroup.
        let mut translations: Vec<Vector> = lattice.clone();
        for rep in holonomy.values() {
            for x in &letters {
                let y = rep.compose(x);
                let s = y.compose(&holonomy[&y.s].inverse()?);
                debug_assert!(s.is_translation());
                translations.push(s.t);
            }
        }
        let computed = lattice_basis(&translations, bit_bound)?;
        // Keep the declared basis when it already spans every translation.
        let same = computed.iter().all(|v| coordinates(&lattice, v).is_some_and(|c| is_integral(&c)));
        let translation_lattice = if same { lattice.clone() } else { computed };
        Ok(CrystGroup { m, declared_lattice: lattice, gens, holonomy, translation_lattice, bit_bound })
    }

    /// Parses `{"m": …, "lattice": [[…]], "generators": [{"t": […], "S": [[…]]}, …]}`.
    /// A missing lattice means ℤ^m.
    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        Self::from_value_with_bit_bound(v, DEFAULT_BIT_BOUND)
    }

    pub fn from_value_with_bit_bound(v: &serde_json::Value, bit_bound: u64) -> Result<Self> {
        let m = v
            .get("m")
            .and_then(|m| m.as_u64())
            .ok_or_else(|| Error::Malformed("crystallographic group needs a positive integer \"m\"".into()))?
            as usize;
        let lattice = match v.get("lattice") {
            Some(l) => l
                .as_array()
                .ok_or_else(|| Error::Malformed("\"lattice\" must be an array of vectors".into()))?
                .iter()
                .map(vector_from_value)
                .collect::<Result<Vec<_>>>()?,
            None => (0..m).map(|i| unit(m, i)).collect(),
        };
        let gens = v
            .get("generators")
            .and_then(|g| g.as_array())
            .ok_or_else(|| Error::Malformed("\"generators\" must be an array".into()))?
            .iter()
            .map(AffineElement::from_value)
            .collect::<Result<Vec<_>>>()?;
        Self::with_bit_bound(m, lattice, gens, bit_bound)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn generators(&self) -> &[AffineElement] {
        &self.gens
    }

    pub fn declared_lattice(&self) -> &[Vector] {
        &self.declared_lattice
    }

    /// ℤ-basis of the translation subgroup Γ_u.
    pub fn translation_lattice(&self) -> &[Vector] {
        &self.translation_lattice
    }

    /// The holonomy group θ, in discovery order.
    pub fn holonomy(&self) -> impl Iterator<Item = &IntegerMatrix> {
        self.holonomy.keys()
    }

    pub fn holonomy_size(&self) -> usize {
        self.holonomy.len()
    }

    /// A group element with holonomy `s`, if `s ∈ θ`.
    pub fn lift_of(&self, s: &IntegerMatrix) -> Option<&AffineElement> {
        self.holonomy.get(s)
    }

    pub(crate) fn holonomy_entries(&self) -> impl Iterator<Item = (&IntegerMatrix, &AffineElement)> {
        self.holonomy.iter()
    }

    pub fn bit_bound(&self) -> u64 {
        self.bit_bound
    }

    /// Membership test: `(t, S)` lies in Γ iff `S ∈ θ` and `t − t_S ∈ Γ_u`.
    pub fn contains(&self, e: &AffineElement) -> bool {
        let Some(rep) = self.holonomy.get(&e.s) else {
            return false;
        };
        let diff: Vector = e.t.iter().zip(&rep.t).map(|(a, b)| a - b).collect();
        coordinates(&self.translation_lattice, &diff).is_some_and(|c| is_integral(&c))
    }

    /// All group generators: the given ones followed by the translation lattice basis.
    pub fn all_generators(&self) -> Vec<AffineElement> {
        self.gens
            .iter()
            .cloned()
            .chain(self.translation_lattice.iter().map(|b| AffineElement::translation(b.clone())))
            .collect()
    }

    /// Embedding into GL(m+1, ℚ) adapted to the translation lattice whose
    /// scale clears the denominators of the group generators and `extra`.
    pub fn embedding(&self, extra: &[AffineElement]) -> Result<AffineEmbedding> {
        let basis = RationalMatrix::from_columns(self.m, &self.translation_lattice)?;
        let basis_inv = basis.inverse()?;
        let mut d = BigInt::one();
        for e in self.gens.iter().chain(extra) {
            for x in basis_inv.mul_vec(&e.t)? {
                d = d.lcm(x.denom());
            }
        }
        Ok(AffineEmbedding { basis, basis_inv, d })
    }
}

fn unit(m: usize, i: usize) -> Vector {
    let mut v = zero_vector(m);
    v[i] = BigRational::one();
    v
}

/// `(t, S) ↦ [[B⁻¹SB, D·B⁻¹t], [0, 1]]` for a lattice basis `B` and scale `D`.
///
/// This is conjugation by `diag(B, D)`, hence a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEmbedding {
    pub basis: RationalMatrix,
    pub basis_inv: RationalMatrix,
    pub d: BigInt,
}

impl AffineEmbedding {
    pub fn embed_rational(&self, e: &AffineElement) -> Result<RationalMatrix> {
        let m = e.dim();
        let s = self.basis_inv.mul(&e.s.to_rational())?.mul(&self.basis)?;
        let scale = BigRational::from_integer(self.d.clone());
        let t: Vector = self.basis_inv.mul_vec(&e.t)?.into_iter().map(|x| x * &scale).collect();
        Ok(RationalMatrix::from_fn(m + 1, m + 1, |i, j| match (i < m, j < m) {
            (true, true) => s[(i, j)].clone(),
            (true, false) => t[i].clone(),
            (false, false) => BigRational::one(),
            (false, true) => BigRational::from_integer(0.into()),
        }))
    }

    /// Integral image; fails if the element is not covered by this embedding's scale.
    pub fn embed(&self, e: &AffineElement) -> Result<IntegerMatrix> {
        self.embed_rational(e)?
            .to_integer()
            .ok_or_else(|| Error::Malformed("element has translation denominators beyond the embedding scale".into()))
    }

    /// Inverse of [`embed_rational`](Self::embed_rational) on affine block matrices.
    pub fn unembed(&self, g: &RationalMatrix) -> Result<AffineElement> {
        let m = self.basis.rows();
        if g.dim()? != m + 1 {
            return Err(Error::DimensionMismatch("embedded matrix size".into()));
        }
        let s = RationalMatrix::from_fn(m, m, |i, j| g[(i, j)].clone());
        let s = self.basis.mul(&s)?.mul(&self.basis_inv)?;
        let scale = BigRational::from_integer(self.d.clone());
        let t: Vector = (0..m).map(|i| g[(i, m)].clone() / &scale).collect();
        let t = self.basis.mul_vec(&t)?;
        let s = s.to_integer().ok_or_else(|| Error::Malformed("holonomy part is not integral".into()))?;
        AffineElement::new(t, s)
    }
}

/// Integral images of all group generators (given generators, then the
/// translation lattice basis) under the minimal-scale embedding.
pub fn embed_affine(group: &CrystGroup) -> Result<Vec<IntegerMatrix>> {
    let emb = group.embedding(&[])?;
    group.all_generators().iter().map(|g| emb.embed(g)).collect()
}
