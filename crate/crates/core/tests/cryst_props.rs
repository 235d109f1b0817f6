mod common;

use common::{random_unimodular, rng};
use congrusep::cryst::{affine_jordan, semifactor_representatives, AffineElement, CrystGroup, Vector};
use congrusep::exactlin::{IntegerMatrix, RationalMatrix};
use congrusep::jordan::jordan_decompose;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::collections::HashMap;

fn fixtures() -> Vec<(&'static str, Value)> {
    vec![
        ("p1", json!({"m": 2, "generators": []})),
        ("pg", json!({"m": 2, "generators": [{"t": ["1/2", "0"], "S": [[1, 0], [0, -1]]}]})),
        ("p2", json!({"m": 2, "generators": [{"t": [0, 0], "S": [[-1, 0], [0, -1]]}]})),
        ("pmm", json!({"m": 2, "generators": [
            {"t": [0, 0], "S": [[1, 0], [0, -1]]}, {"t": [0, 0], "S": [[-1, 0], [0, 1]]}]})),
        ("cm", json!({"m": 2, "generators": [{"t": [0, 0], "S": [[0, 1], [1, 0]]}]})),
        ("p3", json!({"m": 2, "generators": [{"t": [0, 0], "S": [[0, -1], [1, -1]]}]})),
        ("p4", json!({"m": 2, "generators": [{"t": [0, 0], "S": [[0, -1], [1, 0]]}]})),
        ("p4g", json!({"m": 2, "generators": [
            {"t": [0, 0], "S": [[0, -1], [1, 0]]}, {"t": ["1/2", "1/2"], "S": [[1, 0], [0, -1]]}]})),
        ("p6", json!({"m": 2, "generators": [{"t": [0, 0], "S": [[0, -1], [1, 1]]}]})),
    ]
}

fn group(v: &Value) -> CrystGroup {
    CrystGroup::from_value(v).unwrap()
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn lattice_point(basis: &[Vector], a: i64, b: i64) -> Vector {
    (0..basis[0].len()).map(|i| &basis[0][i] * q(a) + &basis[1][i] * q(b)).collect()
}

/// Translation part of the semisimple factor, via the matrix Jordan
/// decomposition of the plain affine block matrix `[[S, t], [0, 1]]`.
fn semisimple_translation(e: &AffineElement) -> Vector {
    let m = e.dim();
    let block = RationalMatrix::from_fn(m + 1, m + 1, |i, j| match (i < m, j < m) {
        (true, true) => q(0) + BigRational::from_integer(e.s[(i, j)].clone()),
        (true, false) => e.t[i].clone(),
        (false, false) => q(1),
        (false, true) => q(0),
    });
    let s = jordan_decompose(&block).unwrap().semisimple;
    (0..m).map(|i| s[(i, m)].clone()).collect()
}

/// Classes of semisimple factors under conjugation by translations, found by
/// brute force over boxes of lattice coordinates.
fn brute_force_classes(g: &CrystGroup, s: &IntegerMatrix) -> Vec<Vec<AffineElement>> {
    let basis = g.translation_lattice().to_vec();
    let lift = g.lift_of(s).unwrap().clone();
    let mut elements = Vec::new();
    for a in -3..=3 {
        for b in -3..=3 {
            elements.push(AffineElement::translation(lattice_point(&basis, a, b)).compose(&lift));
        }
    }
    let mut classes: Vec<(Vec<Vector>, Vec<AffineElement>)> = Vec::new();
    'outer: for e in elements {
        let ts = semisimple_translation(&e);
        for (orbit, members) in classes.iter_mut() {
            if orbit.contains(&ts) {
                members.push(e);
                continue 'outer;
            }
        }
        // Orbit of t_s under t ↦ t − (S − I)μ for μ in a box.
        let mut orbit = Vec::new();
        for a in -13..=13 {
            for b in -13..=13 {
                let mu = lattice_point(&basis, a, b);
                let moved: Vector = (0..mu.len())
                    .map(|i| {
                        let smu: BigRational =
                            (0..mu.len()).map(|j| BigRational::from_integer(s[(i, j)].clone()) * &mu[j]).sum();
                        &ts[i] - (smu - &mu[i])
                    })
                    .collect();
                orbit.push(moved);
            }
        }
        classes.push((orbit, vec![e]));
    }
    classes.into_iter().map(|(_, m)| m).collect()
}

#[test]
fn counts_match_brute_force_cosets() {
    for (name, v) in fixtures() {
        let g = group(&v);
        let set = semifactor_representatives(&g).unwrap();
        for (ci, comp) in set.components.iter().enumerate() {
            let classes = brute_force_classes(&g, &comp.holonomy);
            assert_eq!(classes.len(), comp.count, "{name}, S = {}", comp.holonomy);
            let mut seen = HashMap::new();
            for (k, members) in classes.iter().enumerate() {
                for e in members {
                    let (c, r) = set.locate(&g, e).unwrap();
                    assert_eq!(c, ci);
                    assert_eq!(*seen.entry(r).or_insert(k), k, "{name}: locate merges classes");
                }
            }
            assert_eq!(seen.len(), comp.count);
        }
    }
}

#[test]
fn quotient_orders_from_determinants() {
    // When W_S = ℚ^m the quotient is ℤ^m / (S − I)ℤ^m, of order |det(S − I)|.
    for (name, v) in fixtures() {
        let g = group(&v);
        let set = semifactor_representatives(&g).unwrap();
        for comp in &set.components {
            if comp.w_s_dim == 2 && g.translation_lattice() == g.declared_lattice() {
                let det = comp.holonomy.to_rational().minus_identity().unwrap().det().unwrap();
                let expected = num_traits::Signed::abs(&det).to_integer();
                assert_eq!(num_bigint::BigInt::from(comp.count), expected, "{name}");
            }
        }
    }
}

#[test]
fn counts_invariant_under_basis_change() {
    let mut r = rng(11);
    for (name, v) in fixtures() {
        let base = semifactor_representatives(&group(&v)).unwrap();
        let mut base_counts: Vec<usize> = base.components.iter().map(|c| c.count).collect();
        base_counts.sort();
        for _ in 0..4 {
            // Same lattice, different basis.
            let p = random_unimodular(&mut r, 2, 6);
            let mut w = v.clone();
            w["lattice"] = json!([
                [p[(0, 0)].to_string(), p[(0, 1)].to_string()],
                [p[(1, 0)].to_string(), p[(1, 1)].to_string()]
            ]);
            let set = semifactor_representatives(&group(&w)).unwrap();
            assert_eq!(set.total, base.total, "{name}");

            // Whole group conjugated by p: (t, S) ↦ (p·t, p·S·p⁻¹).
            let p_inv = p.unimodular_inverse().unwrap();
            let pq = p.to_rational();
            let g = group(&v);
            let gens: Vec<AffineElement> = g
                .generators()
                .iter()
                .map(|e| AffineElement::new(pq.mul_vec(&e.t).unwrap(), p.mul(&e.s).unwrap().mul(&p_inv).unwrap()).unwrap())
                .collect();
            let lattice: Vec<Vector> = g.declared_lattice().iter().map(|b| pq.mul_vec(b).unwrap()).collect();
            let conj = CrystGroup::new(2, lattice, gens).unwrap();
            let set = semifactor_representatives(&conj).unwrap();
            let mut counts: Vec<usize> = set.components.iter().map(|c| c.count).collect();
            counts.sort();
            assert_eq!(counts, base_counts, "{name}");
        }
    }
}

#[test]
fn translation_conjugation_keeps_representative() {
    let mut r = rng(5);
    for (name, v) in fixtures() {
        let g = group(&v);
        let set = semifactor_representatives(&g).unwrap();
        let basis = g.translation_lattice().to_vec();
        for s in g.holonomy() {
            let lift = g.lift_of(s).unwrap();
            for _ in 0..5 {
                use rand::Rng;
                let (a, b) = (r.random_range(-4..=4), r.random_range(-4..=4));
                let (c, d) = (r.random_range(-4..=4), r.random_range(-4..=4));
                let e = AffineElement::translation(lattice_point(&basis, a, b)).compose(lift);
                let shift = AffineElement::translation(lattice_point(&basis, c, d));
                let conj = shift.compose(&e).compose(&shift.inverse().unwrap());
                assert_eq!(set.locate(&g, &e).unwrap(), set.locate(&g, &conj).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn affine_jordan_laws() {
    for (_, v) in fixtures() {
        let g = group(&v);
        let basis = g.translation_lattice().to_vec();
        for s in g.holonomy() {
            for (a, b) in [(0, 0), (1, -2), (3, 1)] {
                let e = AffineElement::translation(lattice_point(&basis, a, b)).compose(g.lift_of(s).unwrap());
                let (semi, uni) = affine_jordan(&e).unwrap();
                assert_eq!(semi.compose(&uni), e);
                assert_eq!(uni.compose(&semi), e);
                assert_eq!(affine_jordan(&semi).unwrap(), (semi.clone(), AffineElement::identity(2)));
                assert_eq!(affine_jordan(&uni).unwrap(), (AffineElement::identity(2), uni.clone()));
                assert_eq!(semi.t, semisimple_translation(&e));
            }
        }
    }
}

#[test]
fn embedding_is_consistent_with_matrix_jordan() {
    for (_, v) in fixtures() {
        let g = group(&v);
        let set = semifactor_representatives(&g).unwrap();
        let emb = g.embedding(&[]).unwrap();
        for rep in set.representatives() {
            let (semi, uni) = affine_jordan(&rep.witness).unwrap();
            let pair = jordan_decompose(&emb.embed_rational(&rep.witness).unwrap()).unwrap();
            assert_eq!(pair.semisimple, emb.embed_rational(&semi).unwrap());
            assert_eq!(pair.unipotent, emb.embed_rational(&uni).unwrap());
        }
    }
}
