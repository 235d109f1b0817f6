use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::arith::inv_mod;
use crate::error::{Error, Result};
use crate::exactlin::{IntegerMatrix, RationalMatrix};

/// Element of GL(n, ℤ/m): residues in `[0, m)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    n: usize,
    m: u32,
    entries: Box<[u32]>,
}

pub(crate) fn check_modulus(m: u64) -> Result<u32> {
    match u32::try_from(m) {
        Ok(v) if v >= 2 => Ok(v),
        _ => Err(Error::InvalidModulus(m)),
    }
}

/// `out = a · b` over ℤ/m for row-major n×n residue arrays.
#[inline]
pub(crate) fn mul_into(n: usize, m: u32, a: &[u32], b: &[u32], out: &mut [u32]) {
    let m = m as u128;
    for i in 0..n {
        for j in 0..n {
            let mut acc: u128 = 0;
            for k in 0..n {
                acc += a[i * n + k] as u128 * b[k * n + j] as u128;
            }
            out[i * n + j] = (acc % m) as u32;
        }
    }
}

/// Canonical byte encoding: `n`, `m`, then every entry, each as a big-endian u32.
pub(crate) fn encode(n: usize, m: u32, entries: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 * (entries.len() + 2));
    out.extend_from_slice(&(n as u32).to_be_bytes());
    out.extend_from_slice(&m.to_be_bytes());
    for e in entries {
        out.extend_from_slice(&e.to_be_bytes());
    }
    out
}

impl ModMatrix {
    /// Builds a matrix from residues (reduced mod `m`), rejecting non-invertible ones.
    pub fn new(n: usize, m: u64, entries: Vec<u64>) -> Result<Self> {
        let m = check_modulus(m)?;
        if entries.len() != n * n || n == 0 {
            return Err(Error::DimensionMismatch(format!("{} entries for n = {n}", entries.len())));
        }
        let entries = entries.into_iter().map(|e| (e % m as u64) as u32).collect();
        let mat = ModMatrix { n, m, entries };
        if !mat.has_unit_det() {
            return Err(Error::NotInvertibleMod { modulus: m });
        }
        Ok(mat)
    }

    pub(crate) fn from_raw(n: usize, m: u32, entries: Box<[u32]>) -> Self {
        ModMatrix { n, m, entries }
    }

    pub fn identity(n: usize, m: u64) -> Result<Self> {
        let m = check_modulus(m)?;
        let mut e = vec![0u32; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Ok(ModMatrix { n, m, entries: e.into() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::DimensionMismatch("mod-m matrices of different shape or modulus".into()));
        }
        let mut out = vec![0u32; self.n * self.n];
        mul_into(self.n, self.m, &self.entries, &other.entries, &mut out);
        Ok(ModMatrix { n: self.n, m: self.m, entries: out.into() })
    }

    /// Residues lifted to an integer matrix with entries in `[0, m)`.
    pub fn to_integer(&self) -> IntegerMatrix {
        IntegerMatrix::from_fn(self.n, self.n, |i, j| BigInt::from(self.get(i, j)))
    }

    pub fn det(&self) -> u32 {
        let d = self.to_integer().det().expect("square");
        d.mod_floor(&BigInt::from(self.m)).to_u32().expect("reduced")
    }

    fn has_unit_det(&self) -> bool {
        inv_mod(self.det() as u64, self.m as u64).is_some()
    }

    /// Inverse in GL(n, ℤ/m), via the integer adjugate of the residue lift.
    pub fn inverse(&self) -> Result<ModMatrix> {
        let lift = self.to_integer();
        let det = lift.det()?;
        let m = BigInt::from(self.m);
        let det_mod = det.mod_floor(&m).to_u64().unwrap();
        let det_inv = inv_mod(det_mod, self.m as u64).ok_or(Error::NotInvertibleMod { modulus: self.m })?;
        // adj = det · lift⁻¹ is integral.
        let adj = lift.to_rational().inverse()?.map(|q| (q * num_rational::BigRational::from_integer(det.clone())).to_integer());
        let entries = adj
            .entries()
            .iter()
            .map(|a| {
                let r = a.mod_floor(&m).to_u64().unwrap();
                ((r as u128 * det_inv as u128) % self.m as u128) as u32
            })
            .collect();
        Ok(ModMatrix { n: self.n, m: self.m, entries })
    }

    /// `h⁻¹ · self · h`, given `h` and its inverse.
    pub fn conjugate(&self, h: &ModMatrix, h_inv: &ModMatrix) -> Result<ModMatrix> {
        h_inv.mul(self)?.mul(h)
    }

    /// Image under the projection ℤ/m → ℤ/d for a divisor `d` of `m`.
    pub fn project(&self, d: u64) -> Result<ModMatrix> {
        let d32 = check_modulus(d)?;
        if !self.m.is_multiple_of(d32) {
            return Err(Error::InvalidModulus(d));
        }
        Ok(ModMatrix { n: self.n, m: d32, entries: self.entries.iter().map(|e| e % d32).collect() })
    }

    pub fn encode(&self) -> Vec<u8> {
        encode(self.n, self.m, &self.entries)
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.to_integer(), self.m)
    }
}

impl Serialize for ModMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_integer().serialize(s)
    }
}

/// Reduction homomorphism `r_m` on integer matrices.
pub fn reduce(g: &IntegerMatrix, m: u64) -> Result<ModMatrix> {
    let n = g.dim()?;
    let m32 = check_modulus(m)?;
    let modulus = BigInt::from(m32);
    let entries = g.entries().iter().map(|a| a.mod_floor(&modulus).to_u64().unwrap()).collect();
    ModMatrix::new(n, m32 as u64, entries)
}

/// Reduction of a rational matrix whose denominators are all units mod `m`.
///
/// Fails with [`Error::DenominatorNotUnit`] otherwise: a prime dividing both
/// `m` and a denominator certifies the matrix lies outside GL(n, ℤ_p).
pub fn reduce_rational(g: &RationalMatrix, m: u64) -> Result<ModMatrix> {
    let n = g.dim()?;
    let m32 = check_modulus(m)?;
    let modulus = BigInt::from(m32);
    let mut entries = Vec::with_capacity(n * n);
    for q in g.entries() {
        let den = q.denom().mod_floor(&modulus).to_u64().unwrap();
        let inv = inv_mod(den, m32 as u64).ok_or_else(|| Error::DenominatorNotUnit {
            denominator: q.denom().to_string(),
            modulus: m32,
        })?;
        let num = q.numer().mod_floor(&modulus).to_u64().unwrap();
        entries.push(((num as u128 * inv as u128) % m32 as u128) as u64);
    }
    ModMatrix::new(n, m32 as u64, entries)
}
