//! Exact rational vectors and their textual form.
//!
//! Rationals are written `p/q` in lowest terms with a positive denominator,
//! the `/q` part omitted when `q = 1`. Vectors are comma-separated lists of
//! such tokens on the command line and JSON arrays of strings elsewhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn parse_rational(token: &str) -> Result<Rational> {
    let token = token.trim();
    if token.is_empty() {
        return Err(Error::Parse("empty rational token".into()));
    }
    BigRational::from_str(token).map_err(|e| Error::Parse(format!("`{token}`: {e}")))
}

/// Gcd of a list of rationals: `gcd(numerators) / lcm(denominators)` with
/// every input in lowest terms. The gcd of an all-zero list is zero.
pub fn rational_gcd<'a, I>(values: I) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut numer = BigInt::zero();
    let mut denom = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        numer = numer.gcd(v.numer());
        denom = denom.lcm(v.denom());
    }
    if numer.is_zero() {
        Rational::zero()
    } else {
        BigRational::new(numer, denom)
    }
}

/// Rounds `x` to the nearest multiple of `2^-bits`.
pub fn dyadic_round(x: f64, bits: u32) -> Rational {
    let scale = (bits as f64).exp2();
    let numer = (x * scale).round();
    let numer = BigInt::from(numer as i128);
    BigRational::new(numer, BigInt::one() << bits)
}

/// A non-empty vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatVec(Vec<Rational>);

impl RatVec {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        Ok(RatVec(entries))
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| int(v)).collect())
    }

    pub fn from_fractions(values: &[(i64, i64)]) -> Result<Self> {
        Self::new(values.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// Fails with `NonPositiveEntry` at the first entry `<= 0`.
    pub fn require_positive(&self) -> Result<()> {
        match self.0.iter().position(|v| !v.is_positive()) {
            Some(index) => Err(Error::NonPositiveEntry {
                index,
                value: self.0[index].to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn require_len(&self, expected: usize) -> Result<()> {
        if self.len() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.len(),
            })
        }
    }

    pub fn min(&self) -> &Rational {
        self.0.iter().min().expect("non-empty")
    }

    pub fn max(&self) -> &Rational {
        self.0.iter().max().expect("non-empty")
    }

    /// `|a|`, the sum of the entries.
    pub fn total(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn product(&self) -> Rational {
        self.0.iter().fold(Rational::one(), |acc, v| acc * v)
    }

    /// `‖a‖ = |a| + min a`.
    pub fn norm(&self) -> Rational {
        self.total() + self.min()
    }

    /// `|‖a‖| = |a| + max a`.
    pub fn conorm(&self) -> Rational {
        self.total() + self.max()
    }

    /// Number of distinct entries, `N(a)`.
    pub fn n_distinct(&self) -> usize {
        let mut sorted: Vec<&Rational> = self.0.iter().collect();
        sorted.sort();
        sorted.dedup();
        sorted.len()
    }

    pub fn scaled(&self, factor: &Rational) -> RatVec {
        RatVec(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn dot_int(&self, normal: &[i64]) -> Rational {
        self.0
            .iter()
            .zip(normal)
            .fold(Rational::zero(), |acc, (v, &m)| acc + v * int(m))
    }

    pub fn with_entry(&self, index: usize, value: Rational) -> RatVec {
        let mut entries = self.0.clone();
        entries[index] = value;
        RatVec(entries)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

impl std::ops::Index<usize> for RatVec {
    type Output = Rational;

    fn index(&self, index: usize) -> &Rational {
        &self.0[index]
    }
}

impl FromStr for RatVec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        RatVec::new(entries)
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Serialize for RatVec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for v in &self.0 {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RatVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let tokens = Vec::<String>::deserialize(deserializer)?;
        let entries = tokens
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        RatVec::new(entries).map_err(de::Error::custom)
    }
}

/// `#[serde(with = "rational::string")]` for single rationals.
pub mod string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let token = String::deserialize(deserializer)?;
        parse_rational(&token).map_err(de::Error::custom)
    }
}

/// Same as [`string`] for `Option<Rational>`, `null` when absent.
pub mod opt_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Option<Rational>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_some(&v.to_string()),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<Rational>, D::Error> {
        match Option::<String>::deserialize(deserializer)? {
            Some(token) => parse_rational(&token).map(Some).map_err(de::Error::custom),
            None => Ok(None),
        }
    }
}
