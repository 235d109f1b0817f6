use indexmap::IndexSet;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::matrix::{check_modulus, encode, mul_into, ModMatrix};
use crate::error::{Error, Result};

/// Default element budget for closures and orbits.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;

/// Canonical order-independent SHA-256 digest of a set of n×n residue matrices.
pub fn elements_digest<'a>(n: usize, m: u32, elements: impl IntoIterator<Item = &'a [u32]>) -> String {
    let mut encoded: Vec<Vec<u8>> = elements.into_iter().map(|e| encode(n, m, e)).collect();
    encoded.sort_unstable();
    let mut hasher = Sha256::new();
    for e in &encoded {
        hasher.update(e);
    }
    hex::encode(hasher.finalize())
}

/// A raw element paired with its inverse.
pub(crate) type Letter = (Box<[u32]>, Box<[u32]>);

/// Breadth-first closure of `start` under right multiplication by `letters`
/// (or conjugation, when `conjugate` is set). Returns every reached element.
pub(crate) fn closure(
    n: usize,
    m: u32,
    start: &[u32],
    letters: &[Letter],
    conjugate: bool,
    cap: usize,
) -> Result<IndexSet<Box<[u32]>>> {
    let mut seen: IndexSet<Box<[u32]>> = IndexSet::new();
    seen.insert(start.into());
    let mut tmp = vec![0u32; n * n];
    let mut out = vec![0u32; n * n];
    let mut cursor = 0;
    while cursor < seen.len() {
        for (h, h_inv) in letters {
            let x = &seen[cursor];
            if conjugate {
                mul_into(n, m, h_inv, x, &mut tmp);
                mul_into(n, m, &tmp, h, &mut out);
            } else {
                mul_into(n, m, x, h, &mut out);
            }
            if !seen.contains(&out[..]) {
                if seen.len() >= cap {
                    return Err(Error::BudgetExceeded { cap, reached: seen.len() });
                }
                seen.insert(out.as_slice().into());
            }
        }
        cursor += 1;
    }
    Ok(seen)
}

/// Finite subgroup of GL(n, ℤ/m) generated by the given matrices, fully enumerated.
#[derive(Clone)]
pub struct ModMatrixGroup {
    n: usize,
    m: u32,
    generators: Vec<ModMatrix>,
    elements: IndexSet<Box<[u32]>>,
}

impl ModMatrixGroup {
    /// Closure of `gens` (and their inverses) inside GL(n, ℤ/m).
    ///
    /// Fails with [`Error::BudgetExceeded`] once more than `cap` elements are found.
    pub fn generate(n: usize, m: u64, gens: &[ModMatrix], cap: usize) -> Result<Self> {
        let m = check_modulus(m)?;
        if gens.iter().any(|g| g.n() != n || g.modulus() != m) {
            return Err(Error::DimensionMismatch("generator shape or modulus differs".into()));
        }
        let mut letters = Vec::with_capacity(2 * gens.len());
        for g in gens {
            let inv = g.inverse()?;
            letters.push((g.entries().into(), inv.entries().into()));
            letters.push((inv.entries().into(), g.entries().into()));
        }
        let identity = ModMatrix::identity(n, m as u64)?;
        let elements = closure(n, m, identity.entries(), &letters, false, cap.max(1))?;
        Ok(ModMatrixGroup { n, m, generators: gens.to_vec(), elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &ModMatrix) -> bool {
        g.n() == self.n && g.modulus() == self.m && self.contains_raw(g.entries())
    }

    pub(crate) fn contains_raw(&self, entries: &[u32]) -> bool {
        self.elements.contains(entries)
    }

    pub fn elements(&self) -> impl Iterator<Item = ModMatrix> + '_ {
        self.elements.iter().map(|e| ModMatrix::from_raw(self.n, self.m, e.clone()))
    }

    pub(crate) fn raw_elements(&self) -> impl Iterator<Item = &[u32]> {
        self.elements.iter().map(|e| &e[..])
    }

    pub fn digest(&self) -> String {
        elements_digest(self.n, self.m, self.raw_elements())
    }

    /// Elements in canonical (sorted) order.
    pub fn sorted_elements(&self) -> Vec<ModMatrix> {
        let mut v: Vec<ModMatrix> = self.elements().collect();
        v.sort();
        v
    }

    pub fn summary(&self, full: bool) -> GroupSummary {
        GroupSummary {
            n: self.n,
            m: self.m,
            generators: self.generators.clone(),
            size: self.size(),
            elements_digest: self.digest(),
            elements: full.then(|| self.sorted_elements()),
        }
    }
}

impl std::fmt::Debug for ModMatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModMatrixGroup")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("size", &self.size())
            .finish()
    }
}

/// JSON dump of a group or class: size plus digest, elements only on request.
#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub n: usize,
    pub m: u32,
    pub generators: Vec<ModMatrix>,
    pub size: usize,
    pub elements_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<ModMatrix>>,
}
