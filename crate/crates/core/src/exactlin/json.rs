//! JSON form of exact matrices: `{"n": 2, "entries": [["1", "-1/2"], ["0", "3"]]}`.
//!
//! Entries are decimal integer or `p/q` strings. On input, bare arrays of rows
//! and plain JSON integers are also accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{IntegerMatrix, Matrix, RationalMatrix};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Repr {
    Object { n: usize, entries: Vec<Vec<Entry>> },
    Bare(Vec<Vec<Entry>>),
}

#[derive(Serialize)]
struct Out<'a> {
    n: usize,
    entries: &'a [Vec<String>],
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("invalid rational entry {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    let q = parse_rational(s)?;
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Malformed(format!("expected an integer entry, got {s:?}")))
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rows_from_repr(repr: Repr) -> Result<Vec<Vec<BigRational>>> {
    let (n, rows) = match repr {
        Repr::Object { n, entries } => (Some(n), entries),
        Repr::Bare(rows) => (None, rows),
    };
    let size = n.unwrap_or(rows.len());
    if size == 0 {
        return Err(Error::Malformed("matrix dimension must be positive".into()));
    }
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(Error::Malformed(format!("expected a {size}x{size} matrix")));
    }
    rows.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Text(s) => parse_rational(&s),
                    Entry::Int(i) => Ok(BigRational::from_integer(i.into())),
                })
                .collect()
        })
        .collect()
}

pub fn rational_from_value(v: &serde_json::Value) -> Result<RationalMatrix> {
    let repr = Repr::deserialize(v).map_err(|e| Error::Malformed(format!("matrix: {e}")))?;
    Matrix::from_rows(&rows_from_repr(repr)?)
}

pub fn integer_from_value(v: &serde_json::Value) -> Result<IntegerMatrix> {
    let q = rational_from_value(v)?;
    q.to_integer().ok_or_else(|| Error::Malformed("expected an integer matrix".into()))
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<String>> =
            (0..self.rows()).map(|i| self.row(i).iter().map(format_rational).collect()).collect();
        Out { n: self.rows(), entries: &entries }.serialize(s)
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<String>> =
            (0..self.rows()).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        Out { n: self.rows(), entries: &entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        let rows = rows_from_repr(repr).map_err(D::Error::custom)?;
        Matrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = RationalMatrix::deserialize(d)?;
        q.to_integer().ok_or_else(|| D::Error::custom("expected an integer matrix"))
    }
}
