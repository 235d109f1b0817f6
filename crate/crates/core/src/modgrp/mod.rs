//! Finite matrix groups over ℤ/m: reduction, generated subgroups, conjugacy
//! classes and the finite-level images r_{p^K}(Γ).

pub mod arith;
mod class;
mod group;
mod matrix;

pub use class::{conj_class, gl_generators, ConjClass};
pub use group::{elements_digest, GroupSummary, ModMatrixGroup, DEFAULT_ELEMENT_CAP};
pub use matrix::{reduce, reduce_rational, ModMatrix};

use crate::error::{Error, Result};
use crate::exactlin::IntegerMatrix;
use crate::jordan::is_semisimple;

/// Reduces every generator mod `m`, requiring a common dimension `n`.
pub fn reduce_all(gens: &[IntegerMatrix], n: usize, m: u64) -> Result<Vec<ModMatrix>> {
    gens.iter()
        .map(|g| {
            if g.dim()? != n {
                return Err(Error::DimensionMismatch(format!("expected {n}×{n} generators")));
            }
            reduce(g, m)
        })
        .collect()
}

/// r_m(⟨gens⟩) for integer generators of dimension `n`.
pub fn image_mod(gens: &[IntegerMatrix], n: usize, m: u64, cap: usize) -> Result<ModMatrixGroup> {
    ModMatrixGroup::generate(n, m, &reduce_all(gens, n, m)?, cap)
}

/// The image of ⟨gens⟩ in GL(n, ℤ/p^K).
pub fn padic_level_image(gens: &[IntegerMatrix], n: usize, p: u64, k: u32, cap: usize) -> Result<ModMatrixGroup> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidModulus(p));
    }
    let m = p.checked_pow(k).filter(|&m| m <= u32::MAX as u64).ok_or(Error::InvalidModulus(u64::MAX))?;
    image_mod(gens, n, m, cap)
}

/// Elements of `group` that are mod-m conjugate to the reduction of one of
/// the semisimple `torsion_reps`, sorted canonically.
pub fn semisimple_elements_mod(group: &ModMatrixGroup, torsion_reps: &[IntegerMatrix], cap: usize) -> Result<Vec<ModMatrix>> {
    let mut out = Vec::new();
    for rep in torsion_reps {
        if !is_semisimple(&rep.to_rational())? {
            return Err(Error::NotSemisimple);
        }
        let r = reduce(rep, group.modulus() as u64)?;
        if r.n() != group.n() {
            return Err(Error::DimensionMismatch("representative and group dimensions differ".into()));
        }
        out.extend(conj_class(&r, cap)?.intersection(group));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64_rows(rows)
    }

    fn u() -> IntegerMatrix {
        z(&[&[1, 1], &[0, 1]])
    }

    #[test]
    fn generate_examples() {
        let id = ModMatrix::identity(2, 7).unwrap();
        assert_eq!(ModMatrixGroup::generate(2, 7, &[id], 100).unwrap().size(), 1);
        assert_eq!(image_mod(&[u()], 2, 3, 100).unwrap().size(), 3);
        let sl = image_mod(&[u(), z(&[&[1, 0], &[1, 1]])], 2, 2, 100).unwrap();
        assert_eq!(sl.size(), 6);
    }

    #[test]
    fn budget_is_reported() {
        let err = image_mod(&[u(), z(&[&[1, 0], &[1, 1]])], 2, 5, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { cap: 10, .. }));
    }

    #[test]
    fn gl_generator_sets() {
        let g = gl_generators(1, 5).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].entries(), &[2]);
        assert_eq!(ModMatrixGroup::generate(2, 2, &gl_generators(2, 2).unwrap(), 1000).unwrap().size(), 6);
        assert_eq!(ModMatrixGroup::generate(2, 4, &gl_generators(2, 4).unwrap(), 1000).unwrap().size(), 96);
    }

    #[test]
    fn gl_order_formula() {
        // |GL(2, ℤ/m)| = m⁴ ∏_{p | m} (1 − 1/p)(1 − 1/p²)
        for m in 2..=12u64 {
            let mut order = (m.pow(4)) as f64;
            for (p, _) in arith::factorize(m) {
                let p = p as f64;
                order *= (1.0 - 1.0 / p) * (1.0 - 1.0 / (p * p));
            }
            let g = ModMatrixGroup::generate(2, m, &gl_generators(2, m).unwrap(), 100_000).unwrap();
            assert_eq!(g.size(), order.round() as usize, "m = {m}");
        }
    }

    #[test]
    fn class_examples() {
        let id = ModMatrix::identity(2, 5).unwrap();
        assert_eq!(conj_class(&id, 100).unwrap().size(), 1);
        let scalar = ModMatrix::new(2, 3, vec![2, 0, 0, 2]).unwrap();
        assert_eq!(conj_class(&scalar, 100).unwrap().size(), 1);
        let t = conj_class(&reduce(&u(), 2).unwrap(), 100).unwrap();
        assert_eq!(t.size(), 3);
        let mut seen: Vec<Vec<u32>> = t.elements().map(|e| e.entries().to_vec()).collect();
        seen.sort();
        assert_eq!(seen, vec![vec![0, 1, 1, 0], vec![1, 0, 1, 1], vec![1, 1, 0, 1]]);
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic_level_image(&[u()], 2, 2, 1, 100).unwrap().size(), 2);
        assert_eq!(padic_level_image(&[u()], 2, 2, 2, 100).unwrap().size(), 4);
        assert_eq!(padic_level_image(&[], 2, 5, 3, 100).unwrap().size(), 1);
        assert!(padic_level_image(&[u()], 2, 4, 1, 100).is_err());
    }

    #[test]
    fn semisimple_examples() {
        let minus = IntegerMatrix::identity(2).neg();
        let g3 = image_mod(&[u()], 2, 3, 100).unwrap();
        assert!(semisimple_elements_mod(&g3, std::slice::from_ref(&minus), 100).unwrap().is_empty());
        let triv = image_mod(&[], 2, 3, 100).unwrap();
        let hit = semisimple_elements_mod(&triv, &[IntegerMatrix::identity(2)], 100).unwrap();
        assert_eq!(hit.len(), 1);
        assert!(hit[0].is_identity());
        let g2 = image_mod(&[u()], 2, 2, 100).unwrap();
        let hit = semisimple_elements_mod(&g2, &[minus], 100).unwrap();
        assert_eq!(hit.len(), 1);
        assert!(hit[0].is_identity());
        assert_eq!(semisimple_elements_mod(&g2, &[u()], 100), Err(Error::NotSemisimple));
    }

    #[test]
    fn digest_is_order_independent() {
        let a = image_mod(&[u(), z(&[&[1, 0], &[1, 1]])], 2, 3, 1000).unwrap();
        let b = image_mod(&[z(&[&[1, 0], &[1, 1]]), u()], 2, 3, 1000).unwrap();
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 64);
        let json = serde_json::to_value(a.summary(false)).unwrap();
        assert_eq!(json["size"], 24);
        assert!(json.get("elements").is_none());
    }
}
