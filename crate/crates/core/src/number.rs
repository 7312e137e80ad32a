//! Exact points of the extended half-line `[0, ∞]`.
//!
//! Finite values are non-negative rationals stored in lowest terms on top of
//! arbitrary-precision integers; `∞` is a distinct point above every finite
//! value. Signed rationals ([`BigRational`]) are used freely as scratch
//! space, but only non-negative values can become an [`ExtRat`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of `[0, ∞]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(BigRational),
    Infinity,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRat::Finite(BigRational::one())
    }

    pub fn infinity() -> Self {
        ExtRat::Infinity
    }

    pub fn from_integer(n: u64) -> Self {
        ExtRat::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`, reduced. Fails on a zero denominator or a negative value.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse(format!("zero denominator in {num}/{den}")));
        }
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Lifts a signed scratch value into the carrier; negative values are rejected.
    pub fn from_rational(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            Err(Error::Negative(r.to_string()))
        } else {
            Ok(ExtRat::Finite(r))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRat::Finite(r) if r.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinity => None,
        }
    }

    /// Exact sum; `∞` absorbs.
    pub fn add(&self, other: &ExtRat) -> ExtRat {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::Infinity,
        }
    }

    /// Exact product. `0·∞` has no value in this carrier.
    pub fn mul(&self, other: &ExtRat) -> Result<ExtRat> {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => Ok(ExtRat::Finite(a * b)),
            (ExtRat::Infinity, x) | (x, ExtRat::Infinity) => {
                if x.is_zero() {
                    Err(Error::IndeterminateProduct)
                } else {
                    Ok(ExtRat::Infinity)
                }
            }
        }
    }

    /// Multiplies a finite or infinite value by a positive rational scalar.
    pub(crate) fn scale(&self, k: &BigRational) -> ExtRat {
        debug_assert!(k.is_positive());
        match self {
            ExtRat::Finite(a) => ExtRat::Finite(a * k),
            ExtRat::Infinity => ExtRat::Infinity,
        }
    }

    /// `self - other` when the result stays in the carrier.
    pub fn checked_sub(&self, other: &ExtRat) -> Option<ExtRat> {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) if a >= b => Some(ExtRat::Finite(a - b)),
            (ExtRat::Infinity, ExtRat::Finite(_)) => Some(ExtRat::Infinity),
            _ => None,
        }
    }

    /// Midpoint of two finite values; `lo + 1` when `hi` is infinite.
    pub fn midpoint(lo: &ExtRat, hi: &ExtRat) -> ExtRat {
        match (lo, hi) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => {
                ExtRat::Finite((a + b) / BigRational::from_integer(BigInt::from(2)))
            }
            (ExtRat::Finite(a), ExtRat::Infinity) => ExtRat::Finite(a + BigRational::one()),
            _ => ExtRat::Infinity,
        }
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            (ExtRat::Finite(_), ExtRat::Infinity) => Ordering::Less,
            (ExtRat::Infinity, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Infinity, ExtRat::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigRational> for ExtRat {
    /// Panics on negative input; use [`ExtRat::from_rational`] for fallible lifting.
    fn from(r: BigRational) -> Self {
        ExtRat::from_rational(r).expect("negative value lifted into [0, inf]")
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Infinity => f.write_str("inf"),
            ExtRat::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtRat::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtRat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "∞" | "infinity") {
            return Ok(ExtRat::Infinity);
        }
        let r = parse_signed(s)?;
        ExtRat::from_rational(r)
    }
}

/// Parses `p/q` or `p` into a signed rational (used for piece coefficients).
pub fn parse_signed(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text for a signed rational.
pub fn format_signed(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter for signed rational coefficients written as strings.
pub(crate) mod signed_serde {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_signed(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_signed(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
