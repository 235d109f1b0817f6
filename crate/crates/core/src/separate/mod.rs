//! Certificate-producing searches: congruence separation of Γ from a
//! semisimple conjugacy class, torsion-free congruence overgroups, and
//! witness primes for semisimple factors.

mod table;

pub use table::{
    bounded_torsion_elements, screen_table, table_version, torsion_class_table, validate_torsion_reps, ScreenReport,
    TorsionRep,
};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ErrorKind, Result};
use crate::exactlin::{IntegerMatrix, RationalMatrix};
use crate::jordan::is_semisimple;
use crate::modgrp::arith::{factorize, is_prime, lcm};
use crate::modgrp::{conj_class, image_mod, reduce, ConjClass, ModMatrixGroup};

pub const CERTIFICATE_VERSION: u32 = 1;
const PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];
/// Default level budget K for prime powers in schedules.
pub const DEFAULT_MAX_LEVEL: u32 = 4;

/// Prime powers p^K (p ≤ 23, K ≤ 4) merged with products of two distinct
/// primes ≤ 23, in increasing order.
pub fn default_schedule() -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for &p in &PRIMES {
        out.extend((1..=DEFAULT_MAX_LEVEL).map(|k| p.pow(k)));
    }
    for (i, &p) in PRIMES.iter().enumerate() {
        out.extend(PRIMES[i + 1..].iter().map(|&q| p * q));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Primes used by [`witness_prime`] by default.
pub fn default_primes() -> Vec<u64> {
    PRIMES.to_vec()
}

/// A schedule must be strictly increasing with every modulus in `[2, 2³²)`.
pub fn validate_schedule(schedule: &[u64]) -> Result<()> {
    for &m in schedule {
        if !(2..=u32::MAX as u64).contains(&m) {
            return Err(Error::InvalidModulus(m));
        }
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Malformed("modulus schedule must be strictly increasing".into()));
    }
    Ok(())
}

fn check_gens(gens: &[IntegerMatrix], n: usize) -> Result<()> {
    for g in gens {
        if g.dim()? != n {
            return Err(Error::DimensionMismatch(format!("expected {n}×{n} generators")));
        }
        if !g.is_unimodular() {
            return Err(Error::NotUnimodular { det: g.det()?.to_string() });
        }
    }
    Ok(())
}

/// Disjointness of r_m(⟨Γ⟩) from the mod-m conjugacy class of r_m(η).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    pub version: u32,
    pub kind: String,
    pub n: usize,
    pub m: u64,
    pub gamma_gens: Vec<IntegerMatrix>,
    pub eta: IntegerMatrix,
    pub image_size: usize,
    pub class_size: usize,
    pub image_digest: String,
    pub class_digest: String,
    pub disjoint: bool,
}

/// Per-representative evidence inside a [`TorsionFreeCertificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepEvidence {
    pub matrix: IntegerMatrix,
    pub order: u64,
    pub class_size: usize,
    pub class_digest: String,
    pub disjoint: bool,
}

/// One modulus m at which r_m(⟨Γ⟩) misses the class of every non-identity
/// torsion representative. `table` names the representative list; its
/// completeness up to conjugacy is an assumption carried by that name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionFreeCertificate {
    pub version: u32,
    pub kind: String,
    pub n: usize,
    pub m: u64,
    pub gamma_gens: Vec<IntegerMatrix>,
    pub torsion_reps: Vec<RepEvidence>,
    pub image_size: usize,
    pub image_digest: String,
    pub table: String,
}

impl SeparationCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl TorsionFreeCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn is_disjoint(&self) -> bool {
        self.torsion_reps.iter().all(|r| r.disjoint)
    }
}

fn check_eta(eta: &IntegerMatrix) -> Result<usize> {
    let n = eta.dim()?;
    if !eta.is_unimodular() {
        return Err(Error::NotUnimodular { det: eta.det()?.to_string() });
    }
    if !is_semisimple(&eta.to_rational())? {
        return Err(Error::NotSemisimple);
    }
    Ok(n)
}

fn separation_from(gens: &[IntegerMatrix], eta: &IntegerMatrix, image: &ModMatrixGroup, class: &ConjClass) -> SeparationCertificate {
    SeparationCertificate {
        version: CERTIFICATE_VERSION,
        kind: "separation".into(),
        n: image.n(),
        m: image.modulus() as u64,
        gamma_gens: gens.to_vec(),
        eta: eta.clone(),
        image_size: image.size(),
        class_size: class.size(),
        image_digest: image.digest(),
        class_digest: class.digest(),
        disjoint: class.is_disjoint_from(image),
    }
}

/// The separation data at one modulus; `disjoint` may come out false.
pub fn separation_at(gens: &[IntegerMatrix], eta: &IntegerMatrix, m: u64, cap: usize) -> Result<SeparationCertificate> {
    let n = check_eta(eta)?;
    check_gens(gens, n)?;
    let image = image_mod(gens, n, m, cap)?;
    let class = conj_class(&reduce(eta, m)?, cap)?;
    Ok(separation_from(gens, eta, &image, &class))
}

/// First modulus in `schedule` at which r_m(⟨Γ⟩) and the class of r_m(η) are disjoint.
///
/// The scan stops at the first modulus whose image or class exceeds `cap`.
/// Failure is [`Error::ScheduleExhausted`], which never asserts that no
/// separating modulus exists.
pub fn avoid_conjugacy(gens: &[IntegerMatrix], eta: &IntegerMatrix, schedule: &[u64], cap: usize) -> Result<SeparationCertificate> {
    validate_schedule(schedule)?;
    let n = check_eta(eta)?;
    check_gens(gens, n)?;
    let mut largest_tried = 0;
    for &m in schedule {
        largest_tried = m;
        let attempt = image_mod(gens, n, m, cap).and_then(|image| {
            let class = conj_class(&reduce(eta, m)?, cap)?;
            Ok(separation_from(gens, eta, &image, &class))
        });
        match attempt {
            Ok(cert) if cert.disjoint => return Ok(cert),
            Ok(_) => {}
            Err(e) if e.kind() == ErrorKind::Budget => {
                return Err(Error::ScheduleExhausted { largest_tried, budget_hit: Some(m) })
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::ScheduleExhausted { largest_tried, budget_hit: None })
}

fn nontrivial(reps: &[TorsionRep]) -> Vec<&TorsionRep> {
    reps.iter().filter(|r| r.order > 1).collect()
}

/// The torsion-free data at one modulus; some reps may come out non-disjoint.
/// Identity representatives are left out: they lie in every image.
pub fn torsion_free_at(
    gens: &[IntegerMatrix],
    n: usize,
    reps: &[TorsionRep],
    table: &str,
    m: u64,
    cap: usize,
) -> Result<TorsionFreeCertificate> {
    check_gens(gens, n)?;
    let image = image_mod(gens, n, m, cap)?;
    torsion_free_with_image(gens, reps, table, &image, cap)
}

fn torsion_free_with_image(
    gens: &[IntegerMatrix],
    reps: &[TorsionRep],
    table: &str,
    image: &ModMatrixGroup,
    cap: usize,
) -> Result<TorsionFreeCertificate> {
    let m = image.modulus() as u64;
    let mut evidence = Vec::new();
    for rep in nontrivial(reps) {
        let class = conj_class(&reduce(&rep.matrix, m)?, cap)?;
        evidence.push(RepEvidence {
            matrix: rep.matrix.clone(),
            order: rep.order,
            class_size: class.size(),
            class_digest: class.digest(),
            disjoint: class.is_disjoint_from(image),
        });
    }
    Ok(TorsionFreeCertificate {
        version: CERTIFICATE_VERSION,
        kind: "torsion-free".into(),
        n: image.n(),
        m,
        gamma_gens: gens.to_vec(),
        torsion_reps: evidence,
        image_size: image.size(),
        image_digest: image.digest(),
        table: table.into(),
    })
}

/// A single modulus at which r_m(⟨Γ⟩) avoids every torsion class in `reps`.
///
/// Each scheduled modulus is tried for all reps jointly. If none works, the
/// lcm of the first per-rep successes is tried and verified from scratch.
pub fn torsion_free_overgroup(
    gens: &[IntegerMatrix],
    n: usize,
    reps: &[TorsionRep],
    table: &str,
    schedule: &[u64],
    cap: usize,
) -> Result<TorsionFreeCertificate> {
    validate_schedule(schedule)?;
    check_gens(gens, n)?;
    for r in reps {
        if r.matrix.dim()? != n {
            return Err(Error::DimensionMismatch(format!("torsion representative is not {n}×{n}")));
        }
    }
    if nontrivial(reps).is_empty() {
        return torsion_free_at(gens, n, reps, table, 2, cap);
    }
    let mut firsts: Vec<Option<u64>> = vec![None; nontrivial(reps).len()];
    let mut largest_tried = 0;
    let mut budget_hit = None;
    for &m in schedule {
        largest_tried = m;
        match torsion_free_at(gens, n, reps, table, m, cap) {
            Ok(cert) => {
                if cert.is_disjoint() {
                    return Ok(cert);
                }
                for (first, ev) in firsts.iter_mut().zip(&cert.torsion_reps) {
                    if first.is_none() && ev.disjoint {
                        *first = Some(m);
                    }
                }
            }
            Err(e) if e.kind() == ErrorKind::Budget => {
                budget_hit = Some(m);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(firsts) = firsts.into_iter().collect::<Option<Vec<u64>>>() {
        let joint = firsts.into_iter().fold(1, lcm);
        if joint > largest_tried && joint <= u32::MAX as u64 {
            largest_tried = joint;
            match torsion_free_at(gens, n, reps, table, joint, cap) {
                Ok(cert) if cert.is_disjoint() => return Ok(cert),
                Ok(_) => {}
                Err(e) if e.kind() == ErrorKind::Budget => budget_hit = Some(joint),
                Err(e) => return Err(e),
            }
        }
    }
    Err(Error::ScheduleExhausted { largest_tried, budget_hit })
}

fn malformed(e: impl std::fmt::Display) -> Error {
    Error::Malformed(e.to_string())
}

/// Recomputes every field of a certificate (either kind) from scratch.
///
/// `Ok(false)` means the certificate is well formed but wrong; unparseable
/// input is [`Error::Malformed`]. A budget error is passed through.
pub fn verify_certificate(json: &str, cap: usize) -> Result<bool> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(malformed)?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some("separation") => verify_separation(&serde_json::from_value(value).map_err(malformed)?, cap),
        Some("torsion-free") => verify_torsion_free(&serde_json::from_value(value).map_err(malformed)?, cap),
        Some(other) => Err(Error::Malformed(format!("unknown certificate kind {other:?}"))),
        None => Err(Error::Malformed("certificate has no kind".into())),
    }
}

/// Mathematical errors (bad modulus, non-semisimple η, …) make a certificate
/// false; budget errors propagate.
fn settle(r: Result<bool>) -> Result<bool> {
    match r {
        Err(e) if e.kind() == ErrorKind::Budget => Err(e),
        Err(_) => Ok(false),
        ok => ok,
    }
}

pub fn verify_separation(cert: &SeparationCertificate, cap: usize) -> Result<bool> {
    if cert.version != CERTIFICATE_VERSION || cert.kind != "separation" || !cert.disjoint {
        return Ok(false);
    }
    settle((|| {
        if cert.eta.dim()? != cert.n {
            return Ok(false);
        }
        let fresh = separation_at(&cert.gamma_gens, &cert.eta, cert.m, cap)?;
        Ok(fresh == *cert)
    })())
}

pub fn verify_torsion_free(cert: &TorsionFreeCertificate, cap: usize) -> Result<bool> {
    if cert.version != CERTIFICATE_VERSION || cert.kind != "torsion-free" || !cert.is_disjoint() {
        return Ok(false);
    }
    settle((|| {
        let matrices: Vec<IntegerMatrix> = cert.torsion_reps.iter().map(|r| r.matrix.clone()).collect();
        let reps = validate_torsion_reps(cert.n, &matrices)?;
        if reps.iter().zip(&cert.torsion_reps).any(|(r, ev)| r.order != ev.order || r.order == 1) {
            return Ok(false);
        }
        if cert.table == table_version(cert.n) {
            let builtin: Vec<IntegerMatrix> =
                torsion_class_table(cert.n)?.into_iter().filter(|r| r.order > 1).map(|r| r.matrix).collect();
            if builtin != matrices {
                return Ok(false);
            }
        }
        let fresh = torsion_free_at(&cert.gamma_gens, cert.n, &reps, &cert.table, cert.m, cap)?;
        Ok(fresh == *cert)
    })())
}

/// Why a prime witnesses that a semisimple factor lies outside the p-adic closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessReason {
    /// The prime divides a denominator, so the factor is not in GL(n, ℤ_p).
    Denominator,
    /// The reduction mod p^K is missing from (or undefined on) r_{p^K}(⟨Γ⟩).
    ImageEscape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessPrime {
    pub semisimple_factor: RationalMatrix,
    pub p: u64,
    pub level: u32,
    pub modulus: u64,
    pub reason: WitnessReason,
}

/// A prime p and level K with the factor outside the closure of Γ at p.
///
/// Prime powers p^K over `primes` and `K ≤ max_level` are tried in
/// increasing order. The identity has no witness and exhausts the search.
pub fn witness_prime(
    factor: &RationalMatrix,
    gens: &[IntegerMatrix],
    primes: &[u64],
    max_level: u32,
    cap: usize,
) -> Result<WitnessPrime> {
    let n = factor.dim()?;
    if !is_semisimple(factor)? {
        return Err(Error::NotSemisimple);
    }
    check_gens(gens, n)?;
    let witness = |p, level, reason| WitnessPrime {
        semisimple_factor: factor.clone(),
        p,
        level,
        modulus: p.pow(level),
        reason,
    };
    let den_prime = factor
        .entries()
        .iter()
        .filter(|q| !q.denom().is_one())
        .flat_map(|q| factorize_big(q.denom()))
        .min();
    if let Some(p) = den_prime {
        return Ok(witness(p, 1, WitnessReason::Denominator));
    }
    let integral = factor.to_integer().expect("no denominators");
    let mut moduli = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        for k in 1..=max_level {
            match p.checked_pow(k) {
                Some(q) if q <= u32::MAX as u64 => moduli.push((q, p, k)),
                _ => break,
            }
        }
    }
    moduli.sort_unstable();
    let mut largest_tried = 0;
    for (q, p, k) in moduli {
        largest_tried = q;
        let reduced = match reduce(&integral, q) {
            Ok(r) => r,
            Err(Error::NotInvertibleMod { .. }) => return Ok(witness(p, k, WitnessReason::ImageEscape)),
            Err(e) => return Err(e),
        };
        match image_mod(gens, n, q, cap) {
            Ok(image) if !image.contains(&reduced) => return Ok(witness(p, k, WitnessReason::ImageEscape)),
            Ok(_) => {}
            Err(e) if e.kind() == ErrorKind::Budget => {
                return Err(Error::ScheduleExhausted { largest_tried, budget_hit: Some(q) })
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoWitness { largest_tried })
}

/// Smallest prime factor of a denominator; large ones are trial divided only
/// up to machine size, which covers every denominator arising in practice.
fn factorize_big(d: &BigInt) -> Option<u64> {
    use num_traits::ToPrimitive;
    match d.to_u64() {
        Some(v) => factorize(v).first().map(|&(p, _)| p),
        None => {
            let mut p = 2u64;
            loop {
                if (d % p) == BigInt::from(0) {
                    return Some(p);
                }
                p += 1;
            }
        }
    }
}
