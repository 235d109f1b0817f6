//! `congrusep`: certificates separating virtually unipotent subgroups of
//! GL(n, ℤ) from semisimple conjugacy classes, torsion-free overgroups, and
//! semisimple factors of crystallographic groups.
//!
//! Exit codes: 0 success, 2 input error, 3 precondition failure,
//! 4 budget or schedule exhausted, 5 verification failure.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use congrusep::cryst::{embed_affine, semifactor_representatives, CrystGroup};
use congrusep::exactlin::DEFAULT_BIT_BOUND;
use congrusep::jordan::{is_semisimple, is_unipotent, is_virtually_unipotent_witness, jordan_decompose, torsion_order};
use congrusep::modgrp::{image_mod, DEFAULT_ELEMENT_CAP};
use congrusep::separate::{
    avoid_conjugacy, default_primes, default_schedule, table_version, torsion_class_table, torsion_free_overgroup,
    validate_schedule, validate_torsion_reps, verify_certificate, witness_prime, DEFAULT_MAX_LEVEL,
};
use congrusep::{Error, ErrorKind};
use serde::Serialize;
use serde_json::Value;

const BIT_BOUND_VAR: &str = "CONGRUSEP_BIT_BOUND";

#[derive(Parser)]
#[command(name = "congrusep", version, about = "Congruence certificates for virtually unipotent subgroups of GL(n, Z)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Largest subgroup or conjugacy class enumerated before giving up.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP, value_parser = positive_usize)]
    element_cap: usize,
    /// Write the JSON result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Schedule {
    /// Comma-separated, strictly increasing moduli to try in order.
    #[arg(long)]
    modulus_schedule: Option<String>,
}

impl Schedule {
    fn get(&self) -> Result<Vec<u64>, Error> {
        let s = match &self.modulus_schedule {
            Some(text) => input::integer_list(text)?,
            None => default_schedule(),
        };
        if s.is_empty() {
            return Err(Error::Malformed("modulus schedule is empty".into()));
        }
        validate_schedule(&s)?;
        Ok(s)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Jordan decomposition of an invertible rational matrix.
    Jordan {
        /// Matrix as inline JSON or a file.
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Find a modulus m at which no conjugate of ETA reduces into the image of ⟨GENS⟩.
    Avoid {
        /// Generators (JSON list of matrices, inline or a file).
        #[arg(required_unless_present = "verify_only")]
        gens: Option<String>,
        /// Semisimple element to separate.
        #[arg(required_unless_present = "verify_only")]
        eta: Option<String>,
        /// Re-check an existing certificate instead of searching.
        #[arg(long, conflicts_with_all = ["gens", "eta"])]
        verify_only: Option<PathBuf>,
        #[command(flatten)]
        schedule: Schedule,
        #[command(flatten)]
        common: Common,
    },
    /// Find a modulus m at which the image of ⟨GENS⟩ meets no torsion class.
    TorsionFree {
        #[arg(required_unless_present = "verify_only")]
        gens: Option<String>,
        /// Matrix size, needed when GENS is empty.
        #[arg(long)]
        dim: Option<usize>,
        /// Torsion class representatives to use instead of the builtin table.
        #[arg(long)]
        reps: Option<String>,
        #[arg(long, conflicts_with_all = ["gens", "reps", "dim"])]
        verify_only: Option<PathBuf>,
        #[command(flatten)]
        schedule: Schedule,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check a certificate of either kind.
    Verify {
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Semisimple factors of a crystallographic group modulo its translations.
    Semifactors {
        group: String,
        /// List every representative, not just the counts.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Integral generators of a crystallographic group in GL(m+1, ℤ).
    Embed {
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// A prime p and level K with FACTOR outside the image of ⟨GENS⟩ mod p^K.
    WitnessPrime {
        factor: String,
        gens: String,
        /// Primes to try.
        #[arg(long)]
        primes: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The image of ⟨GENS⟩ in GL(n, ℤ/m), as size and digest.
    Image {
        gens: String,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        dim: Option<usize>,
        /// List every element.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Bounded check that every short word has a torsion semisimple part.
    Scan {
        gens: String,
        #[arg(long, default_value_t = 4, value_parser = positive_usize)]
        word_length: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

enum Failure {
    Lib(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn bit_bound() -> Result<u64, Error> {
    match std::env::var(BIT_BOUND_VAR) {
        Err(_) => Ok(DEFAULT_BIT_BOUND),
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::Malformed(format!("{BIT_BOUND_VAR} must be a positive integer, got {s:?}"))),
        },
    }
}

fn cryst_group(arg: &str) -> Result<CrystGroup, Error> {
    CrystGroup::from_value_with_bit_bound(&input::json_arg(arg)?, bit_bound()?)
}

fn emit(value: &impl Serialize, output: Option<&Path>) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Malformed(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify_file(path: &Path, cap: usize) -> Result<(), Failure> {
    let text = input::read_file(path)?;
    if verify_certificate(&text, cap)? {
        println!("verified");
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct JordanReport {
    semisimple: congrusep::exactlin::RationalMatrix,
    unipotent: congrusep::exactlin::RationalMatrix,
    is_semisimple: bool,
    is_unipotent: bool,
    /// Absent for infinite order or non-integral input.
    #[serde(skip_serializing_if = "Option::is_none")]
    torsion_order: Option<u64>,
}

#[derive(Serialize)]
struct ScanReport {
    word_length: usize,
    consistent: bool,
    verdict: String,
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Jordan { matrix, common } => {
            let g = input::rational_matrix(&matrix)?;
            let pair = jordan_decompose(&g)?;
            let order = match g.to_integer() {
                Some(z) if z.is_unimodular() => torsion_order(&z)?,
                _ => None,
            };
            let report = JordanReport {
                is_semisimple: is_semisimple(&g)?,
                is_unipotent: is_unipotent(&g)?,
                semisimple: pair.semisimple,
                unipotent: pair.unipotent,
                torsion_order: order,
            };
            emit(&report, common.output.as_deref())?;
        }
        Command::Avoid { gens, eta, verify_only, schedule, common } => {
            if let Some(path) = verify_only {
                return verify_file(&path, common.element_cap);
            }
            let eta = input::integer_matrix(&eta.expect("required by clap"))?;
            let (gens, _) = input::generators(&gens.expect("required by clap"), Some(eta.dim()?))?;
            let cert = avoid_conjugacy(&gens, &eta, &schedule.get()?, common.element_cap)?;
            emit(&cert, common.output.as_deref())?;
        }
        Command::TorsionFree { gens, dim, reps, verify_only, schedule, common } => {
            if let Some(path) = verify_only {
                return verify_file(&path, common.element_cap);
            }
            let (gens, n) = input::generators(&gens.expect("required by clap"), dim)?;
            let (table, name) = match reps {
                Some(arg) => {
                    let (mats, _) = input::generators(&arg, Some(n))?;
                    (validate_torsion_reps(n, &mats)?, "custom".to_string())
                }
                None => (torsion_class_table(n)?, table_version(n)),
            };
            let cert = torsion_free_overgroup(&gens, n, &table, &name, &schedule.get()?, common.element_cap)?;
            emit(&cert, common.output.as_deref())?;
        }
        Command::Verify { certificate, common } => return verify_file(&certificate, common.element_cap),
        Command::Semifactors { group, full, common } => {
            let set = semifactor_representatives(&cryst_group(&group)?)?;
            let mut value = serde_json::to_value(&set).expect("serializable");
            if !full {
                if let Some(Value::Array(components)) = value.get_mut("components") {
                    for c in components {
                        if let Some(obj) = c.as_object_mut() {
                            obj.remove("representatives");
                        }
                    }
                }
            }
            emit(&value, common.output.as_deref())?;
        }
        Command::Embed { group, common } => {
            let gens = embed_affine(&cryst_group(&group)?)?;
            emit(&gens, common.output.as_deref())?;
        }
        Command::WitnessPrime { factor, gens, primes, max_level, common } => {
            let factor = input::rational_matrix(&factor)?;
            let (gens, _) = input::generators(&gens, Some(factor.dim()?))?;
            let primes = match primes {
                Some(text) => input::integer_list(&text)?,
                None => default_primes(),
            };
            let w = witness_prime(&factor, &gens, &primes, max_level, common.element_cap)?;
            emit(&w, common.output.as_deref())?;
        }
        Command::Image { gens, modulus, dim, full, common } => {
            let (gens, n) = input::generators(&gens, dim)?;
            let image = image_mod(&gens, n, modulus, common.element_cap)?;
            emit(&image.summary(full), common.output.as_deref())?;
        }
        Command::Scan { gens, word_length, common } => {
            let (gens, _) = input::generators(&gens, None)?;
            let consistent = is_virtually_unipotent_witness(&gens, word_length)?;
            let verdict = if consistent {
                format!("consistent up to word length {word_length}")
            } else {
                "not virtually unipotent: a short word has a non-torsion semisimple part".to_string()
            };
            emit(&ScanReport { word_length, consistent, verdict }, common.output.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("error: verification failed");
            ExitCode::from(5)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Precondition => 3,
                ErrorKind::Budget => 4,
            })
        }
    }
}
