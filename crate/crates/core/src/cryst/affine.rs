use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlin::{coordinates, format_rational, kernel_and_image, parse_rational, IntegerMatrix};
use crate::jordan::torsion_order;

pub type Vector = Vec<BigRational>;

pub(crate) fn add(a: &[BigRational], b: &[BigRational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn apply(s: &IntegerMatrix, t: &[BigRational]) -> Vector {
    (0..s.rows())
        .map(|i| (0..s.cols()).fold(BigRational::zero(), |acc, j| acc + BigRational::from_integer(s[(i, j)].clone()) * &t[j]))
        .collect()
}

pub(crate) fn zero_vector(m: usize) -> Vector {
    vec![BigRational::zero(); m]
}

/// Affine map `x ↦ S·x + t`, written `(t, S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub t: Vector,
    pub s: IntegerMatrix,
}

impl AffineElement {
    pub fn new(t: Vector, s: IntegerMatrix) -> Result<Self> {
        if s.dim()? != t.len() {
            return Err(Error::DimensionMismatch("translation length differs from holonomy size".into()));
        }
        Ok(AffineElement { t, s })
    }

    pub fn identity(m: usize) -> Self {
        AffineElement { t: zero_vector(m), s: IntegerMatrix::identity(m) }
    }

    pub fn translation(t: Vector) -> Self {
        let m = t.len();
        AffineElement { t, s: IntegerMatrix::identity(m) }
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    pub fn is_translation(&self) -> bool {
        self.s.is_identity()
    }

    /// `(t₁, S₁)·(t₂, S₂) = (t₁ + S₁t₂, S₁S₂)`.
    pub fn compose(&self, other: &AffineElement) -> AffineElement {
        AffineElement { t: add(&self.t, &apply(&self.s, &other.t)), s: self.s.mul(&other.s).expect("same size") }
    }

    pub fn inverse(&self) -> Result<AffineElement> {
        let s_inv = self.s.unimodular_inverse()?;
        let t = apply(&s_inv, &self.t).into_iter().map(|x| -x).collect();
        Ok(AffineElement { t, s: s_inv })
    }

    pub fn from_value(v: &serde_json::Value) -> Result<Self> {
        let t = v.get("t").ok_or_else(|| Error::Malformed("affine element without \"t\"".into()))?;
        let s = v.get("S").ok_or_else(|| Error::Malformed("affine element without \"S\"".into()))?;
        AffineElement::new(vector_from_value(t)?, crate::exactlin::integer_from_value(s)?)
    }
}

pub fn vector_from_value(v: &serde_json::Value) -> Result<Vector> {
    let items = v.as_array().ok_or_else(|| Error::Malformed("expected an array of rationals".into()))?;
    items
        .iter()
        .map(|x| match x {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| BigRational::from_integer(i.into()))
                .ok_or_else(|| Error::Malformed(format!("non-integer number {n}; use a \"p/q\" string"))),
            other => Err(Error::Malformed(format!("invalid vector entry {other}"))),
        })
        .collect()
}

pub(crate) fn vector_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl Serialize for AffineElement {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.s.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let mut st = ser.serialize_struct("AffineElement", 2)?;
        st.serialize_field("t", &vector_strings(&self.t))?;
        st.serialize_field("S", &rows)?;
        st.end()
    }
}

/// `ℚ^m = W_S ⊕ W_triv` with `W_S = im(S − I)` and `W_triv = ker(S − I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub w_s: Vec<Vector>,
    pub w_triv: Vec<Vector>,
}

impl Splitting {
    /// `v = a + b` with `a ∈ W_S`, `b ∈ W_triv`.
    pub fn decompose(&self, v: &[BigRational]) -> (Vector, Vector) {
        let basis: Vec<Vector> = self.w_s.iter().chain(&self.w_triv).cloned().collect();
        let c = coordinates(&basis, v).expect("W_S and W_triv span the whole space");
        let m = v.len();
        let mut a = zero_vector(m);
        let mut b = zero_vector(m);
        for (k, (ck, bk)) in c.iter().zip(&basis).enumerate() {
            let target = if k < self.w_s.len() { &mut a } else { &mut b };
            for (x, y) in target.iter_mut().zip(bk) {
                *x += ck * y;
            }
        }
        (a, b)
    }

    /// Coordinates of a vector of `W_S` in the stored basis.
    pub fn w_s_coordinates(&self, v: &[BigRational]) -> Option<Vector> {
        coordinates(&self.w_s, v)
    }
}

/// The moving and fixed subspaces of a finite-order holonomy matrix.
pub fn splitting(s: &IntegerMatrix) -> Result<Splitting> {
    if torsion_order(s)?.is_none() {
        return Err(Error::NotTorsion);
    }
    let ki = kernel_and_image(&s.to_rational().minus_identity()?);
    Ok(Splitting { w_s: ki.image, w_triv: ki.kernel })
}

/// `(t, S) = (t_s, S)·(t_u, I)` with `t_s ∈ W_S`, `t_u ∈ W_triv`; the two factors commute.
pub fn affine_jordan(e: &AffineElement) -> Result<(AffineElement, AffineElement)> {
    let split = splitting(&e.s)?;
    affine_jordan_with(e, &split)
}

pub(crate) fn affine_jordan_with(e: &AffineElement, split: &Splitting) -> Result<(AffineElement, AffineElement)> {
    let (t_s, t_u) = split.decompose(&e.t);
    Ok((AffineElement { t: t_s, s: e.s.clone() }, AffineElement::translation(t_u)))
}
