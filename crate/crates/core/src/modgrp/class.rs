use indexmap::IndexSet;

use super::arith::unit_group_generators;
use super::group::{closure, elements_digest, ModMatrixGroup};
use super::matrix::{check_modulus, ModMatrix};
use crate::error::Result;

/// Generating set of GL(n, ℤ/m): the elementary transvections `I + E_ij`
/// (which generate SL(n, ℤ/m)) followed by `diag(u, 1, …, 1)` for one `u`
/// per cyclic factor of (ℤ/m)ˣ.
pub fn gl_generators(n: usize, m: u64) -> Result<Vec<ModMatrix>> {
    let m32 = check_modulus(m)?;
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = ModMatrix::identity(n, m)?.entries().to_vec();
                e[i * n + j] = 1;
                out.push(ModMatrix::from_raw(n, m32, e.into()));
            }
        }
    }
    for u in unit_group_generators(m) {
        let mut e = ModMatrix::identity(n, m)?.entries().to_vec();
        e[0] = u as u32;
        out.push(ModMatrix::from_raw(n, m32, e.into()));
    }
    Ok(out)
}

/// Conjugacy class of an element of GL(n, ℤ/m) under the full group GL(n, ℤ/m).
#[derive(Clone)]
pub struct ConjClass {
    representative: ModMatrix,
    orbit: IndexSet<Box<[u32]>>,
}

impl ConjClass {
    pub fn representative(&self) -> &ModMatrix {
        &self.representative
    }

    pub fn n(&self) -> usize {
        self.representative.n()
    }

    pub fn modulus(&self) -> u32 {
        self.representative.modulus()
    }

    pub fn size(&self) -> usize {
        self.orbit.len()
    }

    pub fn contains(&self, g: &ModMatrix) -> bool {
        g.n() == self.n() && g.modulus() == self.modulus() && self.orbit.contains(g.entries())
    }

    pub fn elements(&self) -> impl Iterator<Item = ModMatrix> + '_ {
        let (n, m) = (self.n(), self.modulus());
        self.orbit.iter().map(move |e| ModMatrix::from_raw(n, m, e.clone()))
    }

    pub fn digest(&self) -> String {
        elements_digest(self.n(), self.modulus(), self.orbit.iter().map(|e| &e[..]))
    }

    /// Elements of `group` lying in this class.
    pub fn intersection(&self, group: &ModMatrixGroup) -> Vec<ModMatrix> {
        let (n, m) = (self.n(), self.modulus());
        if group.n() != n || group.modulus() != m {
            return Vec::new();
        }
        let mut hits: Vec<ModMatrix> = if self.size() <= group.size() {
            self.orbit.iter().filter(|e| group.contains_raw(e)).map(|e| ModMatrix::from_raw(n, m, e.clone())).collect()
        } else {
            group.raw_elements().filter(|e| self.orbit.contains(*e)).map(|e| ModMatrix::from_raw(n, m, e.into())).collect()
        };
        hits.sort();
        hits
    }

    pub fn is_disjoint_from(&self, group: &ModMatrixGroup) -> bool {
        self.intersection(group).is_empty()
    }
}

impl std::fmt::Debug for ConjClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConjClass")
            .field("representative", &self.representative)
            .field("size", &self.size())
            .finish()
    }
}

/// Orbit of `rep` under conjugation by GL(n, ℤ/m), computed as the closure
/// under conjugation by [`gl_generators`].
pub fn conj_class(rep: &ModMatrix, cap: usize) -> Result<ConjClass> {
    let (n, m) = (rep.n(), rep.modulus());
    let mut letters = Vec::new();
    for h in gl_generators(n, m as u64)? {
        let inv = h.inverse()?;
        letters.push((h.entries().into(), inv.entries().into()));
    }
    let orbit = closure(n, m, rep.entries(), &letters, true, cap.max(1))?;
    Ok(ConjClass { representative: rep.clone(), orbit })
}
